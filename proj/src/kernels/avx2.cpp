#include <immintrin.h>

#include <cstddef>

#include "three_omega/kernels.hpp"

namespace three_omega::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Four frequencies per lane group; the mode loop order matches the scalar
// reference so every lane performs the same operation sequence.
void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im) {
  const std::size_t count = x.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + j);
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    for (int n = 1; n <= n_max; n += 2) {
      const double n2 = static_cast<double>(n) * n;
      const double k = n2 + h;
      const __m256d w = _mm256_set1_pd(1.0 / (n2 * k));
      const __m256d c = _mm256_div_pd(xv, _mm256_set1_pd(k));
      const __m256d s = _mm256_div_pd(w, _mm256_add_pd(one, _mm256_mul_pd(c, c)));
      sr = _mm256_sub_pd(sr, s);
      si = _mm256_add_pd(si, _mm256_mul_pd(s, c));
    }
    _mm256_storeu_pd(re.data() + j, sr);
    _mm256_storeu_pd(im.data() + j, si);
  }
  if (j < count) {
    scalar::mode_sum(x.subspan(j), n_max, h, re.subspan(j), im.subspan(j));
  }
}

Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos) {
  const std::size_t count = v.size();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d b0 = _mm256_setzero_pd();
  __m256d b1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(v.data() + i);
    const __m256d v1 = _mm256_loadu_pd(v.data() + i + 4);
    a0 = _mm256_fmadd_pd(v0, _mm256_loadu_pd(ref_sin.data() + i), a0);
    a1 = _mm256_fmadd_pd(v1, _mm256_loadu_pd(ref_sin.data() + i + 4), a1);
    b0 = _mm256_fmadd_pd(v0, _mm256_loadu_pd(ref_cos.data() + i), b0);
    b1 = _mm256_fmadd_pd(v1, _mm256_loadu_pd(ref_cos.data() + i + 4), b1);
  }
  double a = hsum(_mm256_add_pd(a0, a1));
  double b = hsum(_mm256_add_pd(b0, b1));
  for (; i < count; ++i) {
    a += v[i] * ref_sin[i];
    b += v[i] * ref_cos[i];
  }
  return {a, b};
}

}  // namespace three_omega::kernels::avx2

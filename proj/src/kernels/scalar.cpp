#include <cstddef>

#include "three_omega/kernels.hpp"

namespace three_omega::kernels::scalar {

void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    double sr = 0.0;
    double si = 0.0;
    for (int n = 1; n <= n_max; n += 2) {
      const double n2 = static_cast<double>(n) * n;
      const double k = n2 + h;
      const double w = 1.0 / (n2 * k);
      const double c = x[j] / k;
      const double s = w / (1.0 + c * c);
      sr -= s;
      si += s * c;
    }
    re[j] = sr;
    im[j] = si;
  }
}

Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    a += v[i] * ref_sin[i];
    b += v[i] * ref_cos[i];
  }
  return {a, b};
}

}  // namespace three_omega::kernels::scalar

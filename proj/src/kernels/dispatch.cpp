#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "three_omega/errors.hpp"
#include "three_omega/kernels.hpp"

namespace three_omega::kernels {

#ifndef THREE_OMEGA_HAVE_AVX2
namespace avx2 {
// Non-x86 builds: the symbols exist so the dispatch table links, but they are
// never selected because supported(Isa::avx2) is false.
void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im) {
  scalar::mode_sum(x, n_max, h, re, im);
}
Quadrature correlate(std::span<const double> v, std::span<const double> s,
                     std::span<const double> c) {
  return scalar::correlate(v, s, c);
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(THREE_OMEGA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("THREE_OMEGA_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!supported(isa)) throw ConfigError(std::string("ISA not supported here: ") + to_string(isa));
  current().store(isa, std::memory_order_relaxed);
}

void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im) {
  if (re.size() < x.size() || im.size() < x.size()) {
    throw std::invalid_argument("mode_sum: output spans shorter than input");
  }
  if (active_isa() == Isa::avx2) {
    avx2::mode_sum(x, n_max, h, re, im);
  } else {
    scalar::mode_sum(x, n_max, h, re, im);
  }
}

Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos) {
  if (ref_sin.size() < v.size() || ref_cos.size() < v.size()) {
    throw std::invalid_argument("correlate: reference shorter than signal");
  }
  return active_isa() == Isa::avx2 ? avx2::correlate(v, ref_sin, ref_cos)
                                   : scalar::correlate(v, ref_sin, ref_cos);
}

}  // namespace three_omega::kernels

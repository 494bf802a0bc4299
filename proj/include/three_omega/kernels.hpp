#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference and,
// on x86-64, an AVX2/FMA variant; the variant is chosen once at runtime from
// CPUID and can be pinned with THREE_OMEGA_ISA=scalar|avx2.

#include <span>

namespace three_omega::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// True when the CPU and the build both support `isa`.
bool supported(Isa isa);

/// The variant used by the dispatching entry points below.
Isa active_isa();

/// Pins the dispatch (tests, benchmarking). Throws if `isa` is unsupported.
void set_active_isa(Isa isa);

/// Normalized 3-omega mode sum for a batch of reduced frequencies.
///
/// For every x = 2 omega gamma in `x`, accumulates over odd n <= n_max
///   w_n (-1 + i c_n) / (1 + c_n^2),  c_n = x / (n^2 + h),  w_n = 1 / (n^2 (n^2 + h))
/// where h = g gamma is the radial-loss product. The phasor is referred to a
/// sin(3 omega t) reference for R' > 0 and is 1 at x = 0, h = 0, n_max = 1.
void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im);

struct Quadrature {
  double sin_sum;
  double cos_sum;
};

/// Sum_i v_i sin_i and Sum_i v_i cos_i.
Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos);

namespace scalar {
void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im);
Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos);
}  // namespace scalar

namespace avx2 {
void mode_sum(std::span<const double> x, int n_max, double h, std::span<double> re,
              std::span<double> im);
Quadrature correlate(std::span<const double> v, std::span<const double> ref_sin,
                     std::span<const double> ref_cos);
}  // namespace avx2

}  // namespace three_omega::kernels

#include "three_omega/lockin.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "three_omega/errors.hpp"
#include "three_omega/kernels.hpp"

namespace three_omega {

namespace {

void check_sampling(std::size_t count, int spp, int k) {
  if (k < 1) throw DemodError("harmonic index must be >= 1");
  if (spp < 8 || spp <= 2 * k) {
    throw DemodError("aliasing: " + std::to_string(spp) + " samples per period cannot resolve harmonic " +
                     std::to_string(k));
  }
  if (count == 0 || count % static_cast<std::size_t>(spp) != 0) {
    throw DemodError("window of " + std::to_string(count) + " samples is not a whole number of " +
                     std::to_string(spp) + "-sample periods");
  }
}

Demodulated finish(kernels::Quadrature q, std::size_t count, int k) {
  // 2/N normalizes a peak amplitude; 1/sqrt(2) converts to rms.
  const double scale = std::numbers::sqrt2 / static_cast<double>(count);
  Demodulated out;
  out.harmonic = k;
  out.in_phase = q.sin_sum * scale;
  out.quadrature = q.cos_sum * scale;
  out.amplitude_rms = std::hypot(out.in_phase, out.quadrature);
  out.phase = wrap_phase(std::atan2(out.quadrature, out.in_phase));
  return out;
}

}  // namespace

Demodulated demodulate(std::span<const double> samples, int spp, int k) {
  check_sampling(samples.size(), spp, k);
  std::vector<double> rs(samples.size());
  std::vector<double> rc(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // Reduce the index modulo the period so the reference is exact per period.
    const double arg = 2.0 * kPi * k * static_cast<double>(i % static_cast<std::size_t>(spp)) / spp;
    rs[i] = std::sin(arg);
    rc[i] = std::cos(arg);
  }
  return finish(kernels::correlate(samples, rs, rc), samples.size(), k);
}

Demodulated demodulate(const fdm::TraceResult& trace, double omega, int k) {
  if (trace.times.size() < 2 || trace.voltage.size() != trace.times.size()) {
    throw DemodError("trace needs matching time and voltage samples");
  }
  const double period = 2.0 * kPi / omega;
  const double step = trace.times[1] - trace.times[0];
  const double spp_real = period / step;
  const long spp = std::lround(spp_real);
  if (std::abs(spp_real - static_cast<double>(spp)) > 1e-6 * spp_real) {
    throw DemodError("sampling interval is not an integer fraction of the drive period");
  }
  check_sampling(trace.voltage.size(), static_cast<int>(spp), k);
  std::vector<double> rs(trace.times.size());
  std::vector<double> rc(trace.times.size());
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double arg = std::fmod(k * omega * trace.times[i], 2.0 * kPi);
    rs[i] = std::sin(arg);
    rc[i] = std::cos(arg);
  }
  return finish(kernels::correlate(trace.voltage, rs, rc), trace.voltage.size(), k);
}

}  // namespace three_omega

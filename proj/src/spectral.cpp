#include "three_omega/spectral.hpp"

#include <cmath>

#include "three_omega/errors.hpp"
#include "three_omega/kernels.hpp"

namespace three_omega {

namespace {

void check_control(SeriesControl ctl) {
  if (ctl.n_max < 1) throw ParameterError("n_max", "must be >= 1");
}

double reduced_frequency(const Specimen& s, const Drive& d) { return 2.0 * d.omega * time_constant(s); }

// Bracket [1 - sin(2 omega t + phi_n) / sqrt(1 + cot^2 phi_n)] shared by the
// temperature and resistance series; cot phi_n = x / n^2.
double fluctuation_bracket(double x, double n2, double two_omega_t) {
  const double cot = x / n2;
  const double phi = std::atan2(1.0, cot);
  return 1.0 - std::sin(two_omega_t + phi) / std::sqrt(1.0 + cot * cot);
}

}  // namespace

double temperature_profile(const Specimen& s, const Drive& d, double x, double t, SeriesControl ctl) {
  check_control(ctl);
  const auto th = derive_thermal(s, d);
  if (!(x >= 0.0 && x <= s.length)) throw ParameterError("x", "position outside [0, L]");
  const double xr = 2.0 * d.omega * th.time_constant;
  double sum = 0.0;
  for (int n = 1; n <= ctl.n_max; n += 2) {
    const double nn = n;
    sum += std::sin(nn * kPi * x / s.length) / (nn * nn * nn) *
           fluctuation_bracket(xr, nn * nn, 2.0 * d.omega * t);
  }
  return th.dc_rise * sum;
}

double dc_temperature_profile(const Specimen& s, const Drive& d, double x, SeriesControl ctl) {
  check_control(ctl);
  const auto th = derive_thermal(s, d);
  if (!(x >= 0.0 && x <= s.length)) throw ParameterError("x", "position outside [0, L]");
  double sum = 0.0;
  for (int n = 1; n <= ctl.n_max; n += 2) {
    const double nn = n;
    sum += std::sin(nn * kPi * x / s.length) / (nn * nn * nn);
  }
  return th.dc_rise * sum;
}

double resistance_fluctuation(const Specimen& s, const Drive& d, double t, SeriesControl ctl) {
  check_control(ctl);
  const auto th = derive_thermal(s, d);
  const double xr = 2.0 * d.omega * th.time_constant;
  double sum = 0.0;
  for (int n = 1; n <= ctl.n_max; n += 2) {
    const double n2 = static_cast<double>(n) * n;
    sum += 2.0 / (kPi * n2 * n2) * fluctuation_bracket(xr, n2, 2.0 * d.omega * t);
  }
  return s.resistance_slope * th.dc_rise * sum;
}

std::complex<double> normalized_mode_sum(double x, int n_max, double h) {
  double re = 0.0;
  double im = 0.0;
  kernels::mode_sum(std::span<const double>(&x, 1), n_max, h, std::span<double>(&re, 1),
                    std::span<double>(&im, 1));
  return {re, im};
}

std::vector<std::complex<double>> normalized_mode_sum(std::span<const double> x, int n_max, double h) {
  std::vector<double> re(x.size());
  std::vector<double> im(x.size());
  kernels::mode_sum(x, n_max, h, re, im);
  std::vector<std::complex<double>> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

double v3w_low_freq_limit(const Specimen& s, const Drive& d) {
  validate(s);
  validate(d);
  const double i = d.current_rms;
  return 4.0 * i * i * i * s.resistance * std::abs(s.resistance_slope) * s.length /
         (std::pow(kPi, 4) * s.conductivity * s.area);
}

Phasor3w v3w_phasor(const Specimen& s, const Drive& d, SeriesControl ctl, double loss) {
  check_control(ctl);
  if (!(loss >= 0.0)) throw ParameterError("loss", "radial loss rate must be >= 0");
  const double scale = v3w_low_freq_limit(s, d);
  const double gamma = time_constant(s);
  std::complex<double> z = normalized_mode_sum(reduced_frequency(s, d), ctl.n_max, loss * gamma);
  if (s.resistance_slope < 0.0) z = -z;
  return {scale * std::abs(z), wrap_phase(std::arg(z))};
}

Phasor3w v3w_first_term(const Specimen& s, const Drive& d) {
  const double x = reduced_frequency(s, d);
  const double amplitude = v3w_low_freq_limit(s, d) / std::sqrt(1.0 + x * x);
  const double phi = std::atan(x);
  return {amplitude, unfold_phase(phi, s.resistance_slope)};
}

double v3w_high_freq_limit(const Specimen& s, const Drive& d) {
  validate(s);
  validate(d);
  const double i = d.current_rms;
  return i * i * i * s.resistance * std::abs(s.resistance_slope) /
         (4.0 * d.omega * s.density * s.specific_heat * s.length * s.area);
}

double v3w_high_freq_limit_first_term(const Specimen& s, const Drive& d) {
  return v3w_high_freq_limit(s, d) * 4.0 * 2.0 / (kPi * kPi);
}

std::vector<ErrorCurveRow> error_curves(std::span<const double> grid, SeriesControl exact) {
  check_control(exact);
  for (double x : grid) {
    if (!(x >= 0.0)) throw ParameterError("grid", "reduced frequencies must be >= 0");
  }
  const auto sums = normalized_mode_sum(grid, exact.n_max);
  std::vector<ErrorCurveRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double a = std::abs(sums[i]);
    const double b = 1.0 / std::sqrt(1.0 + x * x);
    rows.push_back({x, a, b, a - b, (a - b) / a});
  }
  return rows;
}

std::vector<double> uniform_grid(double x_max, double step) {
  if (!(step > 0.0) || !(x_max >= 0.0)) throw ParameterError("step", "grid needs step > 0 and max >= 0");
  const auto count = static_cast<std::size_t>(std::floor(x_max / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(i) * step;
  return out;
}

}  // namespace three_omega

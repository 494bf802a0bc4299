#pragma once

#include <complex>
#include <span>
#include <vector>

#include "three_omega/core_model.hpp"

namespace three_omega {

/// rms 3-omega voltage and its lock-in phase (reference zeroed on the
/// 1-omega component), phase in (-pi, pi].
struct Phasor3w {
  double amplitude_rms = 0.0;
  double phase = 0.0;
};

/// Highest Fourier index kept in the mode sums; only odd indices contribute.
struct SeriesControl {
  int n_max = 99;
};

/// Temperature rise above T0 at position x and time t, K.
/// Throws ParameterError for x outside [0, L].
double temperature_profile(const Specimen& specimen, const Drive& drive, double x, double t,
                           SeriesControl ctl = {});

/// Time-averaged (dc) part of the temperature rise at x.
double dc_temperature_profile(const Specimen& specimen, const Drive& drive, double x,
                              SeriesControl ctl = {});

/// Resistance change delta R(t) averaged over the specimen, Ohm.
double resistance_fluctuation(const Specimen& specimen, const Drive& drive, double t,
                              SeriesControl ctl = {});

/// 3-omega phasor summed analytically over odd modes n <= n_max.
/// `loss` is a linear radial loss rate g (1/s); 0 gives the lossless solution.
Phasor3w v3w_phasor(const Specimen& specimen, const Drive& drive, SeriesControl ctl = {},
                    double loss = 0.0);

/// Leading-mode closed form: 4 I^3 L R R' / (pi^4 kappa S sqrt(1 + (2 omega gamma)^2)).
Phasor3w v3w_first_term(const Specimen& specimen, const Drive& drive);

/// omega -> 0 limit of the leading mode, 4 I^3 R R' L / (pi^4 kappa S), V rms (magnitude).
double v3w_low_freq_limit(const Specimen& specimen, const Drive& drive);

/// omega -> infinity limit of the full series, I^3 R R' / (4 omega rho cp L S), V rms.
double v3w_high_freq_limit(const Specimen& specimen, const Drive& drive);

/// Same limit for the leading mode alone: coefficient 2/pi^2 instead of 1/4.
double v3w_high_freq_limit_first_term(const Specimen& specimen, const Drive& drive);

/// Mode sum normalized to the leading-mode low-frequency value, for R' > 0,
/// as a function of the reduced frequency x = 2 omega gamma and h = g gamma.
std::complex<double> normalized_mode_sum(double x, int n_max, double h = 0.0);

/// Batched form of normalized_mode_sum (SIMD-dispatched).
std::vector<std::complex<double>> normalized_mode_sum(std::span<const double> x, int n_max,
                                                      double h = 0.0);

/// One row of the truncation-error table.
struct ErrorCurveRow {
  double x;           ///< 2 omega gamma
  double exact;       ///< full series amplitude
  double first_term;  ///< leading mode alone
  double difference;  ///< exact - first_term
  double relative;    ///< (exact - first_term) / exact
};

/// Truncation-error curves normalized by the omega -> 0 value of the leading mode.
/// Throws ParameterError for negative grid values.
std::vector<ErrorCurveRow> error_curves(std::span<const double> grid, SeriesControl exact = {});

/// 0, 0.1, ..., x_max.
std::vector<double> uniform_grid(double x_max, double step);

}  // namespace three_omega

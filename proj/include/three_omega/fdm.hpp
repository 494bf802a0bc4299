#pragma once

#include <vector>

#include "three_omega/core_model.hpp"

namespace three_omega::fdm {

/// Crank-Nicolson grid for the time-domain heat-equation oracle.
struct GridSpec {
  int nx = 129;                  ///< interior nodes; dx = L / (nx + 1)
  int steps_per_period = 512;    ///< dt = drive period / steps_per_period
  int samples_per_period = 64;   ///< must divide steps_per_period
  int n_periods = 0;             ///< budget; 0 picks one from gamma and the drive period
  int settle_periods = 1;        ///< periods discarded before periodicity is tested
  double periodicity_tol = 1e-6; ///< L-infinity defect between consecutive periods, relative

  double dt(double omega) const;
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

/// Two consecutive steady periods of the oracle solution, uniformly sampled.
struct TraceResult {
  double omega = 0.0;
  std::vector<double> times;               ///< s
  std::vector<double> resistance_change;   ///< delta R(t), Ohm
  std::vector<double> voltage;             ///< I0 sin(omega t) (R + delta R), V
  std::vector<double> center_temperature;  ///< Delta(L/2, t), K
  int samples_per_period = 0;
  int periods_run = 0;
  double periodicity_defect = 0.0;
  /// Interior-node profiles per sample (row-major, samples x nx) when requested.
  std::vector<double> profiles;
  int nx = 0;
};

struct SolveOptions {
  bool include_feedback = false;  ///< keep the c sin^2(omega t) Delta term
  double loss = 0.0;              ///< linear radial loss rate g, 1/s
  bool keep_profiles = false;
};

/// Integrates d/dt Delta = alpha Delta'' + (c sin^2 wt - g) Delta + b sin^2 wt
/// with Delta = 0 at both ends from Delta(x, 0) = 0 until two consecutive
/// periods of delta R agree to `periodicity_tol`.
/// Throws ConvergenceError (carrying the last defect) when the budget runs out.
TraceResult solve(const Specimen& specimen, const Drive& drive, const GridSpec& grid,
                  const SolveOptions& options = {});

/// Period budget used when GridSpec::n_periods is 0.
int default_period_budget(const Specimen& specimen, const Drive& drive, const GridSpec& grid,
                          double loss = 0.0);

/// Discrete steady state of alpha Delta'' - g Delta + q = 0 on the interior
/// nodes for a constant heating rate q (K/s). Returns nx + 2 values including
/// the zero end nodes.
std::vector<double> steady_profile(const Specimen& specimen, double heating, int nx, double loss = 0.0);

/// Heat flowing out through both ends of a steady profile, W (second-order one-sided slopes).
double end_heat_flux(const Specimen& specimen, const std::vector<double>& profile);

/// Free relaxation (heater off) from `initial` (nx + 2 values). Returns the
/// projection onto sin(pi x / L) every `sample_every` steps, starting at t = 0.
std::vector<double> relax_fundamental_mode(const Specimen& specimen, std::vector<double> initial,
                                           double dt, int steps, int sample_every);

/// Trapezoid integral of a profile (nx + 2 values, end nodes included) over [0, L].
double integrate_profile(const std::vector<double>& profile, double length);

}  // namespace three_omega::fdm

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "three_omega/core_model.hpp"

namespace three_omega {

/// One lock-in reading. Frequency and phase are kept in the units the
/// instrument reports (Hz, degrees) so files round-trip bit-exactly.
struct V3wPoint {
  double frequency = 0.0;            ///< Hz
  double amplitude_rms = 0.0;        ///< V
  std::optional<double> phase_deg;   ///< folded phase phi, tan(phi) = 2 omega gamma
  std::optional<double> sigma;       ///< V

  double omega() const noexcept { return 2.0 * kPi * frequency; }
  std::optional<double> phase() const {
    if (!phase_deg) return std::nullopt;
    return *phase_deg * kPi / 180.0;
  }
  bool operator==(const V3wPoint&) const = default;
};

/// Specimen properties the fit does not estimate.
struct KnownParameters {
  double current_rms = 0.0;
  double length = 0.0;
  double area = 0.0;
  double resistance = 0.0;
  double resistance_slope = 0.0;
  double density = 0.0;
  double substrate_temperature = 0.0;
  std::optional<double> diameter;
  std::optional<double> emissivity;
  std::optional<double> surface_conductance;

  static KnownParameters from(const Specimen& specimen, double current_rms);
  /// Specimen with the given thermal properties filled in.
  Specimen specimen(double conductivity, double specific_heat) const;
  void validate() const;
  bool operator==(const KnownParameters&) const = default;
};

struct SweepDataset {
  std::vector<V3wPoint> points;
  KnownParameters known;
  std::map<std::string, std::string> metadata;

  /// >= 4 points, strictly increasing frequency, positive amplitudes/sigmas.
  void validate() const;
  bool has_phases() const;
  bool operator==(const SweepDataset&) const = default;
};

enum class FitModel {
  first_term,  ///< leading mode, 1 / sqrt(1 + (2 w gamma)^2)
  corrected,   ///< leading mode shifted up by 0.01 and rescaled by 1/1.01
  phase,       ///< tan(phi) = 2 w gamma
};

const char* to_string(FitModel model);
FitModel parse_fit_model(const std::string& text);

struct FitOptions {
  FitModel model = FitModel::first_term;
  double window_max = 4.0;  ///< upper bound on 2 w gamma; +inf disables
  int max_window_rounds = 5;
  int max_iterations = 100;
  double step_tolerance = 1e-10;
  ConditionThresholds condition_10_thresholds;
  ConditionThresholds condition_31_thresholds;

  bool operator==(const FitOptions&) const = default;
};

struct FitDiagnostics {
  double condition_10 = 0.0;
  ConditionStatus condition_10_status = ConditionStatus::ok;
  std::optional<double> loss_product;  ///< g * gamma when loss parameters are known
  std::optional<ConditionStatus> loss_status;
  int iterations = 0;
  int window_rounds = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

struct FitResult {
  double kappa = 0.0;
  double gamma = 0.0;
  double cp = 0.0;
  double kappa_se = 0.0;
  double gamma_se = 0.0;
  double residual_norm = 0.0;  ///< relative rms residual over the window
  FitModel model = FitModel::first_term;
  double window_lo = 0.0;  ///< smallest 2 w gamma used
  double window_hi = 0.0;  ///< largest 2 w gamma used
  std::size_t points_used = 0;
  FitDiagnostics diagnostics;
};

/// Levenberg-Marquardt in (ln kappa, ln gamma) against the leading-mode or
/// corrected amplitude model, with the 2 w gamma window re-selected from the
/// fitted gamma until it stops changing.
/// Throws FitError for degenerate data (gamma unidentifiable, too few points).
FitResult fit_amplitude(const SweepDataset& data, const FitOptions& options = {});

/// Model amplitude at angular frequency omega, V rms.
double model_amplitude(FitModel model, const KnownParameters& known, double kappa, double gamma,
                       double omega);

struct PhaseFit {
  double gamma = 0.0;
  double gamma_se = 0.0;
  std::size_t points_used = 0;
  double window_hi = 0.0;
  /// The window reaches past 2 w gamma = 4, where the slope fit reads low.
  bool high_frequency_bias = false;
};

/// Least squares of tan(phi) against 2 omega through the origin.
/// `window_max` bounds 2 w gamma (re-selected from the fitted gamma).
/// Throws InputError when phases are missing.
PhaseFit fit_phase(const SweepDataset& data, std::optional<double> window_max = std::nullopt);

/// pi^2 gamma kappa / (rho L^2).
double specific_heat(double kappa, double gamma, double density, double length);

struct ApparentParameters {
  double kappa;
  double gamma;
  double dc_rise_ratio;
};

/// Values a lossless analysis reports when a linear radial loss g is present.
ApparentParameters apparent_params(double kappa, double gamma, double g);

/// kappa + 16 eps sigma T0^3 L^2 / (pi^2 D) for a radiating cylinder.
double radiative_apparent_kappa(double kappa, double emissivity, double temperature, double length,
                                double diameter);

/// kappa rho_e / T with rho_e = R S / L, W Ohm / K^2.
double wiedemann_franz(double kappa, double resistance, double length, double area, double temperature);

}  // namespace three_omega

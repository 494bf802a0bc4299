#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "three_omega/config.hpp"
#include "three_omega/fitter.hpp"
#include "three_omega/material.hpp"

namespace three_omega {

struct PipelineRow {
  double temperature = 0.0;
  bool ok = false;
  std::string error;  ///< stage and message when !ok

  Specimen truth;  ///< specimen handed to the generator
  double current_rms = 0.0;
  double loss = 0.0;  ///< radial loss rate used by the generator, 1/s
  SweepDataset data;
  FitResult fit;
  std::optional<PhaseFit> phase;

  /// fitted cp relative to the generator's, minus one
  double cp_error() const;
};

struct PipelineResult {
  std::string material;
  Engine engine = Engine::spectral;
  std::uint64_t seed = 0;
  std::vector<PipelineRow> rows;  ///< one per temperature, in config order

  std::size_t failures() const;
};

struct SweepFit {
  FitResult fit;
  std::optional<PhaseFit> phase;
};

/// Amplitude fit plus, when phases are present, the phase-law gamma. With
/// FitModel::phase, kappa comes from the corrected amplitude fit and gamma
/// (hence cp) from the phase law.
SweepFit fit_sweep(const SweepDataset& data, const FitOptions& options);

/// Specimen at temperature T: geometry from `config.specimen`, bulk
/// properties from the material curves, R and R' from the resistivity.
Specimen specimen_at(const RunConfig& config, const MaterialModel& material, double temperature);

/// Current giving 2 gamma b / pi = target (K), rms.
double current_for_dc_rise(const Specimen& specimen, double target);

/// Generate and fit a sweep at every configured temperature. T-points run
/// concurrently; noise is drawn from one generator in temperature order.
/// A failing T-point is recorded and the batch continues.
PipelineResult run_pipeline(const RunConfig& config);

/// pipeline.csv, pipeline_report.txt and plots/ (amplitude and tan(phi)
/// overlays per T); error_curves.csv when `error_table` is set.
void write_pipeline_outputs(const PipelineResult& result, const RunConfig& config,
                            const std::filesystem::path& dir, bool error_table);

}  // namespace three_omega

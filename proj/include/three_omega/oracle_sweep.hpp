#pragma once

#include <span>
#include <vector>

#include "three_omega/fdm.hpp"
#include "three_omega/fitter.hpp"
#include "three_omega/lockin.hpp"
#include "three_omega/parallel.hpp"

namespace three_omega::fdm {

/// Oracle 3-omega reading at one drive: solve, demodulate harmonic 3, fold the phase.
struct OraclePoint {
  double amplitude_rms;
  double phi;  ///< folded phase, rad
  TraceResult trace;
};

OraclePoint oracle_point(const Specimen& specimen, const Drive& drive, const GridSpec& grid,
                         const SolveOptions& options = {});

/// Runs the oracle at every frequency (concurrently) and returns a dataset
/// with folded phases. Order follows `frequencies`.
SweepDataset oracle_sweep(const Specimen& specimen, double current_rms, std::span<const double> frequencies,
                          const GridSpec& grid, const SolveOptions& options = {});

struct ApparentFromOracle {
  double kappa_ap;
  double gamma_ap;
  double cp;  ///< from (kappa_ap, gamma_ap) as if there were no loss
  FitResult fit;
};

/// Oracle sweep with radial loss g, fitted with the leading-mode family
/// (`model`). `reduced` lists the target 2 omega gamma values (true gamma).
ApparentFromOracle apparent_from_oracle(const Specimen& specimen, double current_rms, const GridSpec& grid,
                                        double g, std::span<const double> reduced,
                                        FitModel model = FitModel::corrected);

}  // namespace three_omega::fdm

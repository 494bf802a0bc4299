#include "three_omega/oracle_sweep.hpp"

#include "three_omega/errors.hpp"

namespace three_omega::fdm {

OraclePoint oracle_point(const Specimen& s, const Drive& d, const GridSpec& grid, const SolveOptions& opt) {
  TraceResult trace = solve(s, d, grid, opt);
  const Demodulated dm = demodulate(trace, d.omega, 3);
  return {dm.amplitude_rms, fold_phase(dm.phase, s.resistance_slope), std::move(trace)};
}

SweepDataset oracle_sweep(const Specimen& s, double current_rms, std::span<const double> frequencies,
                          const GridSpec& grid, const SolveOptions& opt) {
  SweepDataset data;
  data.known = KnownParameters::from(s, current_rms);
  data.points.resize(frequencies.size());
  parallel_for(frequencies.size(), [&](std::size_t i) {
    const Drive d = Drive::at_frequency(current_rms, frequencies[i]);
    const OraclePoint p = oracle_point(s, d, grid, opt);
    data.points[i] = V3wPoint{frequencies[i], p.amplitude_rms, p.phi * 180.0 / kPi, std::nullopt};
  });
  return data;
}

ApparentFromOracle apparent_from_oracle(const Specimen& s, double current_rms, const GridSpec& grid, double g,
                                        std::span<const double> reduced, FitModel model) {
  if (!(g >= 0.0)) throw ParameterError("g", "loss rate must be >= 0");
  const double gamma = time_constant(s);
  std::vector<double> freqs(reduced.size());
  for (std::size_t i = 0; i < reduced.size(); ++i) freqs[i] = reduced[i] / (2.0 * gamma) / (2.0 * kPi);
  SolveOptions opt;
  opt.loss = g;
  const SweepDataset data = oracle_sweep(s, current_rms, freqs, grid, opt);
  FitOptions fo;
  fo.model = model;
  FitResult fit = fit_amplitude(data, fo);
  return {fit.kappa, fit.gamma, fit.cp, std::move(fit)};
}

}  // namespace three_omega::fdm

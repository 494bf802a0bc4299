#include "three_omega/sweep.hpp"

#include <cmath>
#include <string>

#include "three_omega/errors.hpp"
#include "three_omega/oracle_sweep.hpp"
#include "three_omega/parallel.hpp"
#include "three_omega/spectral.hpp"
#include "three_omega/units.hpp"

namespace three_omega {

double configured_loss(const RunConfig& config, const Specimen& specimen) {
  return config.loss == LossModel::none ? 0.0 : loss_rate(specimen, config.loss);
}

SweepDataset simulate_sweep(const RunConfig& config, Engine engine) {
  const Specimen& s = config.specimen;
  validate(s);
  validate(Drive{config.current_rms, 1.0});
  const std::vector<double> freqs = plan_frequencies(config.frequencies, s);
  const double g = configured_loss(config, s);
  if (engine == Engine::oracle) config.grid.validate();

  SweepDataset data;
  data.known = KnownParameters::from(s, config.current_rms);
  data.points.resize(freqs.size());
  parallel_for(freqs.size(), [&](std::size_t i) {
    const Drive d = Drive::at_frequency(config.current_rms, freqs[i]);
    try {
      double amplitude = 0.0;
      double phi = 0.0;
      if (engine == Engine::spectral) {
        const Phasor3w p = v3w_phasor(s, d, SeriesControl{config.n_max}, g);
        amplitude = p.amplitude_rms;
        phi = fold_phase(p.phase, s.resistance_slope);
      } else {
        fdm::SolveOptions opt;
        opt.include_feedback = config.include_feedback;
        opt.loss = g;
        const fdm::OraclePoint p = fdm::oracle_point(s, d, config.grid, opt);
        amplitude = p.amplitude_rms;
        phi = p.phi;
      }
      data.points[i] = V3wPoint{freqs[i], amplitude, phi * 180.0 / kPi, std::nullopt};
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("frequency index " + std::to_string(i) + " (" + units::format_double(freqs[i]) +
                                 " Hz): " + e.what(),
                             e.defect());
    }
  });
  return data;
}

void apply_noise(SweepDataset& data, const NoiseSpec& noise, Rng& rng) {
  noise.validate();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& p : data.points) {
    const double v_true = p.amplitude_rms;
    if (noise.amplitude > 0.0) {
      p.amplitude_rms = v_true * (1.0 + noise.amplitude * normal(rng));
      p.sigma = noise.amplitude * v_true;
    }
    if (noise.phase > 0.0 && p.phase_deg) {
      *p.phase_deg += noise.phase * normal(rng) * 180.0 / kPi;
    }
  }
}

SweepDataset generate_sweep(const RunConfig& config, const NoiseSpec& noise, Engine engine) {
  SweepDataset data = simulate_sweep(config, engine);
  Rng rng(noise.seed);
  apply_noise(data, noise, rng);

  using units::format_double;
  auto& m = data.metadata;
  m["engine"] = to_string(engine);
  if (engine == Engine::spectral) {
    m["n_max"] = std::to_string(config.n_max);
  } else {
    m["grid_nx"] = std::to_string(config.grid.nx);
    m["grid_steps_per_period"] = std::to_string(config.grid.steps_per_period);
    m["grid_samples_per_period"] = std::to_string(config.grid.samples_per_period);
    m["grid_periodicity_tol"] = format_double(config.grid.periodicity_tol);
    m["include_c_term"] = config.include_feedback ? "true" : "false";
  }
  m["loss_model"] = to_string(config.loss);
  m["loss_rate"] = format_double(configured_loss(config, config.specimen));
  m["seed"] = std::to_string(noise.seed);
  m["noise_amplitude"] = format_double(noise.amplitude);
  m["noise_phase_rad"] = format_double(noise.phase);
  m["true_conductivity"] = format_double(config.specimen.conductivity);
  m["true_specific_heat"] = format_double(config.specimen.specific_heat);
  m["true_gamma"] = format_double(time_constant(config.specimen));
  return data;
}

}  // namespace three_omega

#include "three_omega/pipeline.hpp"

#include <cmath>

#include "three_omega/csv_io.hpp"
#include "three_omega/errors.hpp"
#include "three_omega/parallel.hpp"
#include "three_omega/report.hpp"
#include "three_omega/spectral.hpp"
#include "three_omega/sweep.hpp"
#include "three_omega/units.hpp"

namespace three_omega {

using units::format_double;

double PipelineRow::cp_error() const {
  return fit.cp / truth.specific_heat - 1.0;
}

std::size_t PipelineResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.ok ? 0 : 1;
  return n;
}

SweepFit fit_sweep(const SweepDataset& data, const FitOptions& options) {
  FitOptions amp = options;
  if (amp.model == FitModel::phase) amp.model = FitModel::corrected;
  SweepFit out{fit_amplitude(data, amp), std::nullopt};
  if (data.has_phases()) {
    try {
      out.phase = fit_phase(data, options.window_max);
    } catch (const FitError& e) {
      if (options.model == FitModel::phase) throw;
      out.fit.diagnostics.warnings.push_back(std::string("phase fit skipped: ") + e.what());
    }
  }
  if (options.model == FitModel::phase) {
    if (!out.phase) throw InputError("phase model needs a phase column");
    out.fit.model = FitModel::phase;
    out.fit.gamma = out.phase->gamma;
    out.fit.gamma_se = out.phase->gamma_se;
    out.fit.cp = specific_heat(out.fit.kappa, out.fit.gamma, data.known.density, data.known.length);
  }
  return out;
}

Specimen specimen_at(const RunConfig& config, const MaterialModel& material, double temperature) {
  const MaterialPoint m = material.at(temperature);
  Specimen s = config.specimen;
  s.substrate_temperature = temperature;
  s.density = m.density;
  s.specific_heat = m.specific_heat;
  s.conductivity = m.conductivity;
  s.resistance = m.resistivity * s.length / s.area;
  s.resistance_slope = m.resistivity_slope * s.length / s.area;
  return s;
}

double current_for_dc_rise(const Specimen& s, double target) {
  if (!(target > 0.0)) throw ParameterError("target_dc_rise", "must be > 0");
  const double i0_sq = target * kPi * kPi * kPi * s.conductivity * s.area / (2.0 * s.resistance * s.length);
  return std::sqrt(i0_sq / 2.0);
}

PipelineResult run_pipeline(const RunConfig& config) {
  if (config.pipeline.temperatures.empty()) throw ConfigError("[pipeline] temperatures is empty");
  if (!(config.specimen.length > 0.0) || !(config.specimen.area > 0.0)) {
    throw ConfigError("[specimen] length and area (or diameter) are required for the pipeline");
  }
  const auto material = make_material(config.pipeline.material);

  PipelineResult result;
  result.material = material->name();
  result.engine = config.engine;
  result.seed = config.noise.seed;
  const auto& temps = config.pipeline.temperatures;
  result.rows.resize(temps.size());

  // Stage 1: noiseless generation, concurrent.
  parallel_for(temps.size(), [&](std::size_t i) {
    PipelineRow& row = result.rows[i];
    row.temperature = temps[i];
    try {
      RunConfig local = config;
      local.specimen = specimen_at(config, *material, temps[i]);
      local.current_rms = config.pipeline.target_dc_rise > 0.0
                              ? current_for_dc_rise(local.specimen, config.pipeline.target_dc_rise)
                              : config.current_rms;
      row.truth = local.specimen;
      row.current_rms = local.current_rms;
      row.loss = configured_loss(local, local.specimen);
      row.data = simulate_sweep(local, config.engine);
      row.ok = true;
    } catch (const Error& e) {
      row.ok = false;
      row.error = std::string("generate: ") + e.what();
    }
  });

  // Stage 2: noise from one generator, in temperature order.
  Rng rng(config.noise.seed);
  for (auto& row : result.rows) {
    if (row.ok) apply_noise(row.data, config.noise, rng);
  }

  // Stage 3: fits, concurrent.
  parallel_for(temps.size(), [&](std::size_t i) {
    PipelineRow& row = result.rows[i];
    if (!row.ok) return;
    try {
      SweepFit f = fit_sweep(row.data, config.fit);
      row.fit = std::move(f.fit);
      row.phase = f.phase;
    } catch (const Error& e) {
      row.ok = false;
      row.error = std::string("fit: ") + e.what();
    }
  });
  return result;
}

namespace {

std::string temperature_tag(double t) {
  std::string s = format_double(t);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

void write_pipeline_outputs(const PipelineResult& result, const RunConfig& config,
                            const std::filesystem::path& dir, bool error_table) {
  std::string csv =
      "T0_k,ok,kappa,gamma,cp,condition_10,g_gamma,residual_norm,kappa_true,gamma_true,cp_true,cp_error,"
      "current_rms,error\n";
  for (const auto& r : result.rows) {
    csv += format_double(r.temperature);
    csv += r.ok ? ",true" : ",false";
    if (r.ok) {
      const double gamma_true = time_constant(r.truth);
      csv += ',' + format_double(r.fit.kappa) + ',' + format_double(r.fit.gamma) + ',' + format_double(r.fit.cp) +
             ',' + format_double(r.fit.diagnostics.condition_10) + ',' + format_double(r.loss * gamma_true) + ',' +
             format_double(r.fit.residual_norm) + ',' + format_double(r.truth.conductivity) + ',' +
             format_double(gamma_true) + ',' + format_double(r.truth.specific_heat) + ',' +
             format_double(r.cp_error()) + ',' + format_double(r.current_rms) + ",\n";
    } else {
      std::string msg = r.error;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ' ';
      }
      csv += ",,,,,,,,,,,," + msg + "\n";
    }
  }
  write_text_file(dir / "pipeline.csv", csv);

  Report rep;
  rep.add("material", result.material);
  rep.add("engine", std::string(to_string(result.engine)));
  rep.add("fit_model", std::string(to_string(config.fit.model)));
  rep.add("seed", std::to_string(result.seed));
  rep.add("noise_amplitude", config.noise.amplitude);
  rep.add("noise_phase_rad", config.noise.phase);
  rep.add("temperatures", static_cast<long long>(result.rows.size()));
  rep.add("failures", static_cast<long long>(result.failures()));
  double worst = 0.0;
  for (const auto& r : result.rows) {
    if (r.ok) worst = std::max(worst, std::abs(r.cp_error()));
  }
  rep.add("max_abs_cp_error", worst);
  for (const auto& r : result.rows) {
    if (!r.ok) rep.add("error_T" + temperature_tag(r.temperature), r.error);
  }
  write_text_file(dir / "pipeline_report.txt", rep.str());

  for (const auto& r : result.rows) {
    if (!r.ok) continue;
    const std::string tag = temperature_tag(r.temperature);
    std::vector<PlotRow> amp;
    amp.reserve(r.data.points.size());
    for (const auto& p : r.data.points) {
      amp.push_back({p.frequency, p.amplitude_rms,
                     model_amplitude(r.fit.model == FitModel::phase ? FitModel::corrected : r.fit.model,
                                     r.data.known, r.fit.kappa, r.fit.gamma, p.omega())});
    }
    write_text_file(dir / "plots" / ("amplitude_T" + tag + ".csv"), emit_plot_csv(amp, "freq_hz", "v3w_vrms"));
    if (r.data.has_phases()) {
      const double gamma = r.phase ? r.phase->gamma : r.fit.gamma;
      std::vector<PlotRow> ph;
      ph.reserve(r.data.points.size());
      for (const auto& p : r.data.points) {
        ph.push_back({2.0 * p.omega(), std::tan(*p.phase()), 2.0 * p.omega() * gamma});
      }
      write_text_file(dir / "plots" / ("phase_T" + tag + ".csv"), emit_plot_csv(ph, "two_omega_rad_s", "tan_phi"));
    }
  }

  if (error_table) {
    const auto grid = uniform_grid(10.0, 0.1);
    write_text_file(dir / "error_curves.csv", emit_error_curves_csv(error_curves(grid)));
  }
}

}  // namespace three_omega

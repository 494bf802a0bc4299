// threeomega: command-line front end for the 3-omega library.
//
// Exit codes: 0 ok, 1 input/config error, 2 convergence or fit error,
// 3 a condition exceeded its fail threshold (check).

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "three_omega/config.hpp"
#include "three_omega/core_model.hpp"
#include "three_omega/csv_io.hpp"
#include "three_omega/errors.hpp"
#include "three_omega/kernels.hpp"
#include "three_omega/oracle_sweep.hpp"
#include "three_omega/pipeline.hpp"
#include "three_omega/report.hpp"
#include "three_omega/spectral.hpp"
#include "three_omega/sweep.hpp"
#include "three_omega/units.hpp"

namespace fs = std::filesystem;
using namespace three_omega;

namespace {

enum Exit { kOk = 0, kInput = 1, kConvergence = 2, kThreshold = 3 };

struct Common {
  std::string config;
  std::string output;
};

RunConfig load(const Common& c) {
  return c.config.empty() ? RunConfig{} : load_config(c.config);
}

fs::path output_dir(const Common& c, const RunConfig& cfg) {
  if (!c.output.empty()) return c.output;
  return resolve_output_dir(cfg);
}

void emit(const fs::path& path, const std::string& text) {
  write_text_file(path, text);
  std::cerr << "wrote " << path.string() << "\n";
}

int cmd_simulate(const Common& c, std::optional<double> frequency) {
  const RunConfig cfg = load(c);
  validate(cfg.specimen);
  const double f = frequency ? *frequency : plan_frequencies(cfg.frequencies, cfg.specimen).front();
  const Drive d = Drive::at_frequency(cfg.current_rms, f);
  validate(d);
  fdm::SolveOptions opt;
  opt.include_feedback = cfg.include_feedback;
  opt.loss = configured_loss(cfg, cfg.specimen);
  const fdm::OraclePoint p = fdm::oracle_point(cfg.specimen, d, cfg.grid, opt);
  const Phasor3w spectral = v3w_phasor(cfg.specimen, d, SeriesControl{cfg.n_max}, opt.loss);
  const DerivedThermal th = derive_thermal(cfg.specimen, d);

  Report r;
  r.add("frequency_hz", f);
  r.add("two_omega_gamma", 2.0 * d.omega * th.time_constant);
  r.add("gamma", th.time_constant);
  r.add("dc_rise", th.dc_rise);
  r.add("oracle_v3w_rms", p.amplitude_rms);
  r.add("oracle_phi_deg", p.phi * 180.0 / kPi);
  r.add("spectral_v3w_rms", spectral.amplitude_rms);
  r.add("spectral_phi_deg", fold_phase(spectral.phase, cfg.specimen.resistance_slope) * 180.0 / kPi);
  r.add("periods_run", static_cast<long long>(p.trace.periods_run));
  r.add("periodicity_defect", p.trace.periodicity_defect);
  r.add("include_c_term", cfg.include_feedback);
  r.add("loss_rate", opt.loss);
  const fs::path dir = output_dir(c, cfg);
  emit(dir / "trace.csv", emit_trace_csv(p.trace));
  emit(dir / "simulate_report.txt", r.str());
  std::cout << r.str();
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& engine) {
  const RunConfig cfg = load(c);
  const Engine e = engine.empty() ? cfg.engine : parse_engine(engine);
  const SweepDataset data = generate_sweep(cfg, cfg.noise, e);
  emit(output_dir(c, cfg) / "sweep.csv", emit_sweep_csv(data));
  return kOk;
}

int cmd_fit(const Common& c, const std::string& input, const std::string& model) {
  const RunConfig cfg = load(c);
  std::string path = input;
  if (path.empty() && cfg.input) path = *cfg.input;
  if (path.empty()) throw InputError("no input CSV (use --input or [io] input)");
  SweepDataset data = ingest_csv(path);
  // Files without specimen metadata take it from the config.
  if (data.known.current_rms == 0.0 && !c.config.empty()) {
    data.known = KnownParameters::from(cfg.specimen, cfg.current_rms);
  }
  FitOptions opt = cfg.fit;
  if (!model.empty()) opt.model = parse_fit_model(model);
  const SweepFit f = fit_sweep(data, opt);
  const Report r = fit_report(data, f.fit, f.phase);

  const fs::path dir = output_dir(c, cfg);
  emit(dir / "fit_report.txt", r.str());
  std::vector<PlotRow> amp;
  const FitModel shape = f.fit.model == FitModel::phase ? FitModel::corrected : f.fit.model;
  for (const auto& p : data.points) {
    amp.push_back({p.frequency, p.amplitude_rms, model_amplitude(shape, data.known, f.fit.kappa, f.fit.gamma, p.omega())});
  }
  emit(dir / "amplitude_fit.csv", emit_plot_csv(amp, "freq_hz", "v3w_vrms"));
  if (data.has_phases()) {
    const double gamma = f.phase ? f.phase->gamma : f.fit.gamma;
    std::vector<PlotRow> ph;
    for (const auto& p : data.points) {
      ph.push_back({2.0 * p.omega(), std::tan(*p.phase()), 2.0 * p.omega() * gamma});
    }
    emit(dir / "phase_fit.csv", emit_plot_csv(ph, "two_omega_rad_s", "tan_phi"));
  }
  std::cout << r.str();
  return kOk;
}

int cmd_analyze_error(const Common& c, double x_max, double step, int n_max) {
  const RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  const auto rows = error_curves(uniform_grid(x_max, step), SeriesControl{n_max});
  emit(output_dir(c, cfg) / "error_curves.csv", emit_error_curves_csv(rows));
  Report r;
  r.add("n_max", static_cast<long long>(n_max));
  r.add("difference_at_zero", rows.front().difference);
  r.add("relative_at_zero", rows.front().relative);
  r.add("difference_at_max", rows.back().difference);
  r.add("relative_at_max", rows.back().relative);
  std::cout << r.str();
  return kOk;
}

int cmd_pipeline(const Common& c, bool error_table) {
  const RunConfig cfg = load(c);
  const PipelineResult res = run_pipeline(cfg);
  const fs::path dir = output_dir(c, cfg);
  write_pipeline_outputs(res, cfg, dir, error_table);
  std::cerr << "wrote " << (dir / "pipeline.csv").string() << "\n";
  for (const auto& row : res.rows) {
    if (row.ok) {
      std::cout << "T0 = " << units::format_double(row.temperature) << " K  kappa = " << row.fit.kappa
                << "  cp = " << row.fit.cp << "  cp_error = " << row.cp_error() << "\n";
    } else {
      std::cout << "T0 = " << units::format_double(row.temperature) << " K  FAILED: " << row.error << "\n";
    }
  }
  return res.failures() == 0 ? kOk : kConvergence;
}

int cmd_check(const Common& c) {
  const RunConfig cfg = load(c);
  validate(cfg.specimen);
  const Drive d{cfg.current_rms, 1.0};
  validate(d);
  Report r;
  bool fail = false;
  const double c10 = condition_10(cfg.specimen, d, 1);
  const ConditionStatus s10 = classify(c10, cfg.fit.condition_10_thresholds);
  r.add("condition_10", c10);
  r.add("condition_10_status", std::string(to_string(s10)));
  fail |= s10 == ConditionStatus::fail;
  if (cfg.loss != LossModel::none) {
    const double g = loss_rate(cfg.specimen, cfg.loss);
    const double c31 = condition_31(cfg.specimen, g);
    const ConditionStatus s31 = classify(c31, cfg.fit.condition_31_thresholds);
    r.add("loss_model", std::string(to_string(cfg.loss)));
    r.add("loss_rate", g);
    r.add("g_gamma", c31);
    r.add("g_gamma_status", std::string(to_string(s31)));
    fail |= s31 == ConditionStatus::fail;
  }
  for (const auto& w : consistency_warnings(cfg.specimen)) r.add("warning", w);
  std::cout << r.str();
  return fail ? kThreshold : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-omega thermal measurement: forward model, time-domain oracle, fitting"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("-c,--config", common.config, "INI run configuration");
    if (config_required) opt->required();
    opt->check(CLI::ExistingFile);
    sub->add_option("-o,--output", common.output, "output directory (overrides config and environment)");
  };

  std::optional<double> frequency;
  auto* simulate = app.add_subcommand("simulate", "oracle trace at one frequency");
  add_common(simulate, true);
  simulate->add_option("-f,--frequency", frequency, "drive frequency, Hz (default: first planned)");

  std::string engine;
  auto* sweep = app.add_subcommand("sweep", "generate a synthetic V3w dataset");
  add_common(sweep, true);
  sweep->add_option("-e,--engine", engine, "spectral | oracle (default from config)");

  std::string input;
  std::string model;
  auto* fit = app.add_subcommand("fit", "fit kappa, gamma and cp to a sweep CSV");
  add_common(fit, false);
  fit->add_option("-i,--input", input, "sweep CSV");
  fit->add_option("-m,--model", model, "first-term | corrected | phase");

  double x_max = 10.0;
  double step = 0.1;
  int n_max = 99;
  auto* analyze = app.add_subcommand("analyze-error", "truncation-error table of the leading mode");
  add_common(analyze, false);
  analyze->add_option("--x-max", x_max, "largest 2 omega gamma")->check(CLI::PositiveNumber);
  analyze->add_option("--step", step, "grid step")->check(CLI::PositiveNumber);
  analyze->add_option("--n-max", n_max, "highest mode of the exact series")->check(CLI::PositiveNumber);

  bool error_table = false;
  auto* pipeline = app.add_subcommand("pipeline", "generate and fit at every substrate temperature");
  add_common(pipeline, true);
  pipeline->add_flag("--error-table", error_table, "also write error_curves.csv");

  auto* check = app.add_subcommand("check", "report conditions 10 and 31 for a configuration");
  add_common(check, true);

  bool scalar = false;
  app.add_flag("--scalar", scalar, "disable SIMD kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  if (scalar) kernels::set_active_isa(kernels::Isa::scalar);

  try {
    if (simulate->parsed()) return cmd_simulate(common, frequency);
    if (sweep->parsed()) return cmd_sweep(common, engine);
    if (fit->parsed()) return cmd_fit(common, input, model);
    if (analyze->parsed()) return cmd_analyze_error(common, x_max, step, n_max);
    if (pipeline->parsed()) return cmd_pipeline(common, error_table);
    if (check->parsed()) return cmd_check(common);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const FitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

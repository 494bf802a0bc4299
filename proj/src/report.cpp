#include "three_omega/report.hpp"

#include "three_omega/units.hpp"

namespace three_omega {

void Report::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add(std::string key, double value) {
  add(std::move(key), units::format_double(value));
}

void Report::add(std::string key, long long value) {
  add(std::move(key), std::to_string(value));
}

void Report::add(std::string key, bool value) {
  add(std::move(key), std::string(value ? "true" : "false"));
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

Report fit_report(const SweepDataset& data, const FitResult& fit, const std::optional<PhaseFit>& phase) {
  Report r;
  r.add("model", std::string(to_string(fit.model)));
  r.add("kappa", fit.kappa);
  r.add("kappa_se", fit.kappa_se);
  r.add("gamma", fit.gamma);
  r.add("gamma_se", fit.gamma_se);
  r.add("cp", fit.cp);
  r.add("residual_norm", fit.residual_norm);
  r.add("window_lo", fit.window_lo);
  r.add("window_hi", fit.window_hi);
  r.add("points_used", static_cast<long long>(fit.points_used));
  r.add("points_total", static_cast<long long>(data.points.size()));
  const auto& d = fit.diagnostics;
  r.add("iterations", static_cast<long long>(d.iterations));
  r.add("window_rounds", static_cast<long long>(d.window_rounds));
  r.add("converged", d.converged);
  r.add("condition_10", d.condition_10);
  r.add("condition_10_status", std::string(to_string(d.condition_10_status)));
  if (d.loss_product) {
    r.add("g_gamma", *d.loss_product);
    r.add("g_gamma_status", std::string(to_string(*d.loss_status)));
  }
  const auto& k = data.known;
  if (k.substrate_temperature > 0.0 && k.resistance > 0.0) {
    r.add("wiedemann_franz", wiedemann_franz(fit.kappa, k.resistance, k.length, k.area, k.substrate_temperature));
  }
  if (phase) {
    r.add("phase_gamma", phase->gamma);
    r.add("phase_gamma_se", phase->gamma_se);
    r.add("phase_points_used", static_cast<long long>(phase->points_used));
    r.add("phase_window_hi", phase->window_hi);
    r.add("phase_high_frequency_bias", phase->high_frequency_bias);
  }
  for (std::size_t i = 0; i < d.warnings.size(); ++i) {
    r.add("warning_" + std::to_string(i + 1), d.warnings[i]);
  }
  for (const auto& [key, value] : data.metadata) r.add("input_" + key, value);
  return r;
}

}  // namespace three_omega

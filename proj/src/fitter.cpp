#include "three_omega/fitter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "three_omega/errors.hpp"

namespace three_omega {

namespace {

constexpr double kShift = 0.01;  // corrected model: [shape + 0.01] / 1.01

// 4 I^3 L R |R'| / (pi^4 S): amplitude times kappa at omega -> 0.
double amplitude_prefactor(const KnownParameters& k) {
  const double i = k.current_rms;
  return 4.0 * i * i * i * k.length * k.resistance * std::abs(k.resistance_slope) /
         (std::pow(kPi, 4) * k.area);
}

struct ModelEval {
  double value;
  double d_log_kappa;
  double d_log_gamma;
};

ModelEval evaluate(FitModel model, double prefactor, double kappa, double gamma, double omega) {
  const double x = 2.0 * omega * gamma;
  const double q = 1.0 + x * x;
  const double shape = 1.0 / std::sqrt(q);
  const double d_shape = -x * x * shape / q;  // d shape / d ln gamma
  if (model == FitModel::corrected) {
    const double a = prefactor / ((1.0 + kShift) * kappa);
    const double v = a * (shape + kShift);
    return {v, -v, a * d_shape};
  }
  const double a = prefactor / kappa;
  const double v = a * shape;
  return {v, -v, a * d_shape};
}

struct Selection {
  std::vector<std::size_t> index;
  bool operator==(const Selection&) const = default;
};

Selection select_window(const SweepDataset& data, double gamma, double window_max) {
  Selection s;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    if (2.0 * data.points[i].omega() * gamma <= window_max) s.index.push_back(i);
  }
  return s;
}

double initial_gamma(const SweepDataset& data) {
  const auto& p = data.points;
  const double plateau = p.front().amplitude_rms;
  const double half = plateau / std::numbers::sqrt2;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].amplitude_rms <= half) {
      const double v0 = p[i - 1].amplitude_rms;
      const double v1 = p[i].amplitude_rms;
      const double t = v0 == v1 ? 0.0 : (v0 - half) / (v0 - v1);
      const double omega = p[i - 1].omega() + t * (p[i].omega() - p[i - 1].omega());
      return 1.0 / (2.0 * omega);
    }
  }
  const double r = plateau / p.back().amplitude_rms;
  if (r * r - 1.0 > 1e-9) return std::sqrt(r * r - 1.0) / (2.0 * p.back().omega());
  throw FitError("amplitude is flat across the sweep: gamma is not identifiable");
}

struct LmOutcome {
  double log_kappa;
  double log_gamma;
  std::array<double, 3> normal;  // J^T W J (unnormalized weights): a00, a01, a11
  double weighted_ssr;
  int iterations;
  bool converged;
};

LmOutcome levenberg_marquardt(const SweepDataset& data, const std::vector<std::size_t>& idx,
                              const std::vector<double>& weight, FitModel model, double prefactor,
                              double log_kappa, double log_gamma, const FitOptions& opt) {
  const std::size_t m = idx.size();
  std::vector<double> r(m), j0(m), j1(m);

  auto linearize = [&](double lk, double lg) {
    double cost = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& pt = data.points[idx[k]];
      const auto e = evaluate(model, prefactor, std::exp(lk), std::exp(lg), pt.omega());
      const double sw = std::sqrt(weight[idx[k]]);
      r[k] = sw * (pt.amplitude_rms - e.value);
      j0[k] = sw * e.d_log_kappa;
      j1[k] = sw * e.d_log_gamma;
      cost += r[k] * r[k];
    }
    return cost;
  };
  auto cost_at = [&](double lk, double lg) {
    double cost = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& pt = data.points[idx[k]];
      const double v = evaluate(model, prefactor, std::exp(lk), std::exp(lg), pt.omega()).value;
      const double rr = std::sqrt(weight[idx[k]]) * (pt.amplitude_rms - v);
      cost += rr * rr;
    }
    return cost;
  };

  double lambda = 1e-3;
  int it = 0;
  bool converged = false;
  double cost = linearize(log_kappa, log_gamma);
  for (; it < opt.max_iterations; ++it) {
    double a00 = 0, a01 = 0, a11 = 0, g0 = 0, g1 = 0;
    for (std::size_t k = 0; k < m; ++k) {
      a00 += j0[k] * j0[k];
      a01 += j0[k] * j1[k];
      a11 += j1[k] * j1[k];
      g0 += j0[k] * r[k];
      g1 += j1[k] * r[k];
    }
    if (cost == 0.0) {
      converged = true;
      break;
    }
    bool stepped = false;
    while (lambda < 1e20) {
      const double b00 = a00 * (1.0 + lambda);
      const double b11 = a11 * (1.0 + lambda);
      const double det = b00 * b11 - a01 * a01;
      if (!(det > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      const double d0 = (b11 * g0 - a01 * g1) / det;
      const double d1 = (b00 * g1 - a01 * g0) / det;
      const double trial = cost_at(log_kappa + d0, log_gamma + d1);
      const bool small = std::max(std::abs(d0), std::abs(d1)) < opt.step_tolerance;
      if (trial <= cost) {
        log_kappa += d0;
        log_gamma += d1;
        lambda = std::max(lambda * 0.1, 1e-12);
        cost = linearize(log_kappa, log_gamma);
        stepped = true;
        converged = small;
        break;
      }
      if (small) {
        converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (converged || !stepped) {
      converged = true;
      ++it;
      break;
    }
  }
  // Normal matrix at the solution with the caller's absolute weights.
  linearize(log_kappa, log_gamma);
  std::array<double, 3> normal{0, 0, 0};
  for (std::size_t k = 0; k < m; ++k) {
    normal[0] += j0[k] * j0[k];
    normal[1] += j0[k] * j1[k];
    normal[2] += j1[k] * j1[k];
  }
  return {log_kappa, log_gamma, normal, cost, it, converged};
}

}  // namespace

KnownParameters KnownParameters::from(const Specimen& s, double current_rms) {
  KnownParameters k;
  k.current_rms = current_rms;
  k.length = s.length;
  k.area = s.area;
  k.resistance = s.resistance;
  k.resistance_slope = s.resistance_slope;
  k.density = s.density;
  k.substrate_temperature = s.substrate_temperature;
  k.diameter = s.diameter;
  k.emissivity = s.emissivity;
  k.surface_conductance = s.surface_conductance;
  return k;
}

Specimen KnownParameters::specimen(double conductivity, double specific_heat) const {
  Specimen s;
  s.length = length;
  s.area = area;
  s.diameter = diameter;
  s.density = density;
  s.specific_heat = specific_heat;
  s.conductivity = conductivity;
  s.resistance = resistance;
  s.resistance_slope = resistance_slope;
  s.substrate_temperature = substrate_temperature;
  s.emissivity = emissivity;
  s.surface_conductance = surface_conductance;
  return s;
}

void KnownParameters::validate() const {
  // Placeholder thermal values; only the known fields are being checked.
  three_omega::validate(specimen(1.0, 1.0));
  if (!(current_rms > 0.0)) throw ParameterError("current_rms", "must be positive");
}

void SweepDataset::validate() const {
  if (points.size() < 4) throw InputError("a sweep needs at least 4 points for an amplitude fit");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.frequency > 0.0)) throw InputError("frequency must be positive");
    if (!(p.amplitude_rms > 0.0)) throw InputError("amplitude must be positive");
    if (p.sigma && !(*p.sigma > 0.0)) throw InputError("sigma must be positive");
    if (i > 0 && !(p.frequency > points[i - 1].frequency)) {
      throw InputError("frequencies must be strictly increasing");
    }
  }
  known.validate();
}

bool SweepDataset::has_phases() const {
  return !points.empty() &&
         std::all_of(points.begin(), points.end(), [](const V3wPoint& p) { return p.phase_deg.has_value(); });
}

const char* to_string(FitModel model) {
  switch (model) {
    case FitModel::first_term: return "first-term";
    case FitModel::corrected: return "corrected";
    case FitModel::phase: return "phase";
  }
  return "?";
}

FitModel parse_fit_model(const std::string& text) {
  if (text == "first-term") return FitModel::first_term;
  if (text == "corrected") return FitModel::corrected;
  if (text == "phase") return FitModel::phase;
  throw ConfigError("unknown fit model '" + text + "' (expected first-term, corrected or phase)");
}

double model_amplitude(FitModel model, const KnownParameters& known, double kappa, double gamma,
                       double omega) {
  return evaluate(model, amplitude_prefactor(known), kappa, gamma, omega).value;
}

FitResult fit_amplitude(const SweepDataset& data, const FitOptions& opt) {
  data.validate();
  if (opt.model == FitModel::phase) throw FitError("phase model: use fit_phase");
  const double prefactor = amplitude_prefactor(data.known);

  const bool weighted = std::all_of(data.points.begin(), data.points.end(),
                                    [](const V3wPoint& p) { return p.sigma.has_value(); });
  std::vector<double> weight(data.points.size(), 1.0);
  if (weighted) {
    double wmax = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
      weight[i] = 1.0 / (*data.points[i].sigma * *data.points[i].sigma);
      wmax = std::max(wmax, weight[i]);
    }
    // Normalizing by the largest weight leaves equal sigmas as exact unit weights.
    for (double& w : weight) w /= wmax;
  }

  double log_kappa = std::log(prefactor / data.points.front().amplitude_rms);
  double log_gamma = std::log(initial_gamma(data));

  Selection sel = select_window(data, std::exp(log_gamma), opt.window_max);
  LmOutcome fit{};
  int rounds = 0;
  for (;;) {
    if (sel.index.size() < 4) {
      throw FitError("only " + std::to_string(sel.index.size()) +
                     " points inside the 2*omega*gamma window; need at least 4");
    }
    fit = levenberg_marquardt(data, sel.index, weight, opt.model, prefactor, log_kappa, log_gamma, opt);
    log_kappa = fit.log_kappa;
    log_gamma = fit.log_gamma;
    ++rounds;
    Selection next = select_window(data, std::exp(log_gamma), opt.window_max);
    if (next == sel || rounds >= opt.max_window_rounds) {
      if (!(next == sel)) sel = next;  // reported below as a warning
      break;
    }
    sel = next;
  }

  const double a00 = fit.normal[0], a01 = fit.normal[1], a11 = fit.normal[2];
  if (!(a11 > 1e-14 * a00) || !(1.0 - a01 * a01 / (a00 * a11) > 1e-12)) {
    throw FitError("degenerate Jacobian: gamma is not identifiable from this frequency range");
  }

  FitResult res;
  res.model = opt.model;
  res.kappa = std::exp(log_kappa);
  res.gamma = std::exp(log_gamma);
  res.cp = specific_heat(res.kappa, res.gamma, data.known.density, data.known.length);
  res.points_used = sel.index.size();
  res.diagnostics.iterations = fit.iterations;
  res.diagnostics.window_rounds = rounds;
  res.diagnostics.converged = fit.converged;
  if (!fit.converged) res.diagnostics.warnings.emplace_back("optimizer hit the iteration limit");
  if (rounds >= opt.max_window_rounds) {
    res.diagnostics.warnings.emplace_back("window selection did not settle within the round limit");
  }

  // Covariance in log space; with sigmas the weights are absolute, otherwise
  // scaled by the residual variance.
  const std::size_t m = sel.index.size();
  double wscale = 1.0;
  if (weighted) {
    double wmax = 0.0;
    for (const auto& p : data.points) wmax = std::max(wmax, 1.0 / (*p.sigma * *p.sigma));
    wscale = wmax;
  }
  const double det = (a00 * a11 - a01 * a01) * wscale;
  double c00 = a11 / det;
  double c11 = a00 / det;
  if (!weighted) {
    const double s2 = m > 2 ? fit.weighted_ssr / static_cast<double>(m - 2) : 0.0;
    c00 *= s2;
    c11 *= s2;
  }
  res.kappa_se = res.kappa * std::sqrt(std::max(c00, 0.0));
  res.gamma_se = res.gamma * std::sqrt(std::max(c11, 0.0));

  double rel = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i : sel.index) {
    const auto& p = data.points[i];
    const double v = evaluate(opt.model, prefactor, res.kappa, res.gamma, p.omega()).value;
    const double e = (p.amplitude_rms - v) / p.amplitude_rms;
    rel += e * e;
    lo = std::min(lo, 2.0 * p.omega() * res.gamma);
    hi = std::max(hi, 2.0 * p.omega() * res.gamma);
  }
  res.residual_norm = std::sqrt(rel / static_cast<double>(m));
  res.window_lo = lo;
  res.window_hi = hi;

  const auto& k = data.known;
  const double i0 = std::numbers::sqrt2 * k.current_rms;
  res.diagnostics.condition_10 =
      i0 * i0 * std::abs(k.resistance_slope) * k.length / (kPi * kPi * res.kappa * k.area);
  res.diagnostics.condition_10_status = classify(res.diagnostics.condition_10, opt.condition_10_thresholds);
  if (k.diameter && (k.emissivity || k.surface_conductance)) {
    const Specimen fitted = k.specimen(res.kappa, res.cp);
    double g = 0.0;
    if (k.emissivity) g += radiation_g(fitted);
    if (k.surface_conductance) g += convection_g(fitted);
    res.diagnostics.loss_product = g * res.gamma;
    res.diagnostics.loss_status = classify(g * res.gamma, opt.condition_31_thresholds);
  }
  for (const auto& w : consistency_warnings(k.specimen(res.kappa, res.cp))) {
    res.diagnostics.warnings.push_back(w);
  }
  return res;
}

PhaseFit fit_phase(const SweepDataset& data, std::optional<double> window_max) {
  if (!data.has_phases()) throw InputError("phase fit needs a phase on every point");
  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    const double phi = *data.points[i].phase();
    if (phi > 0.0 && phi < kPi / 2.0) valid.push_back(i);
  }
  auto slope = [&](const std::vector<std::size_t>& idx) {
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i : idx) {
      const double x = 2.0 * data.points[i].omega();
      sxy += x * std::tan(*data.points[i].phase());
      sxx += x * x;
    }
    return sxy / sxx;
  };
  auto in_window = [&](double gamma) {
    std::vector<std::size_t> idx;
    for (std::size_t i : valid) {
      if (!window_max || 2.0 * data.points[i].omega() * gamma <= *window_max) idx.push_back(i);
    }
    return idx;
  };

  std::vector<std::size_t> idx = valid;
  if (idx.size() < 2) throw FitError("phase fit needs at least 2 points with 0 < phi < 90 deg");
  double gamma = slope(idx);
  for (int round = 0; window_max && round < 10; ++round) {
    auto next = in_window(gamma);
    if (next.size() < 2) throw FitError("fewer than 2 phase points inside the window");
    if (next == idx) break;
    idx = std::move(next);
    gamma = slope(idx);
  }

  PhaseFit out;
  out.gamma = gamma;
  out.points_used = idx.size();
  double ssr = 0.0, sxx = 0.0;
  for (std::size_t i : idx) {
    const double x = 2.0 * data.points[i].omega();
    const double e = std::tan(*data.points[i].phase()) - gamma * x;
    ssr += e * e;
    sxx += x * x;
    out.window_hi = std::max(out.window_hi, x * gamma);
  }
  out.gamma_se = idx.size() > 1 ? std::sqrt(ssr / static_cast<double>(idx.size() - 1) / sxx) : 0.0;
  out.high_frequency_bias = out.window_hi > 4.0;
  return out;
}

double specific_heat(double kappa, double gamma, double density, double length) {
  return kPi * kPi * gamma * kappa / (density * length * length);
}

ApparentParameters apparent_params(double kappa, double gamma, double g) {
  if (!(g >= 0.0)) throw ParameterError("g", "loss rate must be >= 0");
  const double f = 1.0 + g * gamma;
  return {kappa * f, gamma / f, 1.0 / f};
}

double radiative_apparent_kappa(double kappa, double emissivity, double temperature, double length,
                                double diameter) {
  return kappa + 16.0 * emissivity * kStefanBoltzmann * std::pow(temperature, 3) * length * length /
                     (kPi * kPi * diameter);
}

double wiedemann_franz(double kappa, double resistance, double length, double area, double temperature) {
  return kappa * (resistance * area / length) / temperature;
}

}  // namespace three_omega

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "three_omega/config.hpp"
#include "three_omega/core_model.hpp"
#include "three_omega/csv_io.hpp"
#include "three_omega/fdm.hpp"
#include "three_omega/fitter.hpp"
#include "three_omega/lockin.hpp"
#include "three_omega/oracle_sweep.hpp"
#include "three_omega/spectral.hpp"
#include "three_omega/sweep.hpp"

using namespace three_omega;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("%s %-4s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0, double e = 0, double g = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e, g);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 20 um x 8 mm platinum-like wire at room temperature.
Specimen wire() {
  Specimen s;
  s.length = 8e-3;
  s.diameter = 20e-6;
  s.area = kPi * 20e-6 * 20e-6 / 4.0;
  s.density = 21450.0;
  s.specific_heat = 133.0;
  s.conductivity = 71.6;
  s.resistance = 2.7;
  s.resistance_slope = 0.0105;
  s.substrate_temperature = 300.0;
  s.emissivity = 1.0;
  return s;
}

constexpr double kCurrent = 2e-3;

std::vector<double> reduced_grid(int points, double x_max) {
  std::vector<double> x;
  for (int i = 1; i <= points; ++i) x.push_back(x_max * i / points);
  return x;
}

SweepDataset exact_series_sweep(const Specimen& s, int n_max) {
  RunConfig cfg;
  cfg.specimen = s;
  cfg.current_rms = kCurrent;
  cfg.frequencies.kind = FrequencyPlan::Kind::reduced;
  cfg.frequencies.reduced_max = 4.0;
  cfg.frequencies.points = 41;
  cfg.n_max = n_max;
  return simulate_sweep(cfg, Engine::spectral);
}

void criteria_1_2() {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepDataset data = exact_series_sweep(s, 99);

  FitOptions first;
  first.model = FitModel::first_term;
  const FitResult f1 = fit_amplitude(data, first);
  const double t1 = seconds_since(t0);
  const double dk = f1.kappa / s.conductivity - 1.0;
  const double dg = f1.gamma / gamma - 1.0;
  const double dc = f1.cp / s.specific_heat - 1.0;
  const bool ok1 = std::abs(dk - 0.035) <= 0.005 && std::abs(dg + 0.02) <= 0.005 && std::abs(dc - 0.014) <= 0.004 &&
                   t1 < 1.0;
  report("1", ok1,
         fmt("first-term fit of exact series (41 pts, 0<2wg<=4): kappa %+.2f%% (want +3.5+-0.5), gamma %+.2f%% "
             "(want -2.0+-0.5), cp %+.2f%% (want +1.4+-0.4), %.3f s",
             100 * dk, 100 * dg, 100 * dc, t1));

  const auto t2 = std::chrono::steady_clock::now();
  FitOptions corrected;
  corrected.model = FitModel::corrected;
  const FitResult f2 = fit_amplitude(data, corrected);
  const double t3 = seconds_since(t2);
  const double ek = f2.kappa / s.conductivity - 1.0;
  const double eg = f2.gamma / gamma - 1.0;
  const double ec = f2.cp / s.specific_heat - 1.0;
  const bool ok2 = std::abs(ek) <= 1e-3 && std::abs(eg) <= 1e-3 && std::abs(ec) <= 1e-3 && t3 < 1.0;
  report("2", ok2,
         fmt("corrected fit of the same data: kappa %+.3f%%, gamma %+.3f%%, cp %+.3f%% (want each within 0.1%%), "
             "%.3f s",
             100 * ek, 100 * eg, 100 * ec, t3));
}

void criterion_3() {
  const auto rows = error_curves(uniform_grid(10.0, 0.1), SeriesControl{99});
  const double target = std::pow(kPi, 4) / 96.0 - 1.0;
  const double d0 = rows.front().difference;
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone &= rows[i].relative > rows[i - 1].relative;
  report("3", std::abs(d0 - target) <= 1e-4 && monotone,
         fmt("A-B(0) = %.6f vs pi^4/96-1 = %.6f (tol 1e-4); (A-B)/A monotone on 0..10: ", d0, target) +
             (monotone ? "yes" : "no"));
}

void criterion_4() {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  const Drive d{kCurrent, 1e4 / (2.0 * gamma)};
  const double exact = v3w_phasor(s, d, SeriesControl{199}).amplitude_rms;
  const double limit = v3w_high_freq_limit(s, d);
  const double rel = exact / limit - 1.0;
  report("4a", std::abs(rel) <= 1e-3,
         fmt("v3w_phasor(n_max=199) at 2wg=1e4 vs high-frequency limit: %+.3f%% (want within 0.1%%)", 100 * rel));
  const double ratio = limit / v3w_high_freq_limit_first_term(s, d);
  const double want = kPi * kPi / 8.0;
  report("4b", std::abs(ratio / want - 1.0) <= 1e-3,
         fmt("exact / leading-mode high-frequency coefficient = %.6f vs pi^2/8 = %.6f", ratio, want));
}

void criterion_5() {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  const fdm::GridSpec grid;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_amp = 0.0;
  double worst_phase = 0.0;
  for (double x : {0.1, 1.0, 4.0, 10.0}) {
    const Drive d{kCurrent, x / (2.0 * gamma)};
    const auto o = fdm::oracle_point(s, d, grid);
    const Phasor3w p = v3w_phasor(s, d, SeriesControl{99});
    const double phi = fold_phase(p.phase, s.resistance_slope);
    worst_amp = std::max(worst_amp, std::abs(o.amplitude_rms / p.amplitude_rms - 1.0));
    worst_phase = std::max(worst_phase, std::abs(o.phi - phi) * 180.0 / kPi);
  }
  const double t = seconds_since(t0);
  report("5", worst_amp <= 5e-3 && worst_phase <= 0.5 && t < 30.0,
         fmt("oracle vs spectral at 2wg in {0.1,1,4,10}: max amplitude dev %.4f%%, max phase dev %.4f deg, %.2f s",
             100 * worst_amp, worst_phase, t));
}

void criterion_6() {
  Specimen s;
  s.length = 1e-3;
  s.area = 1e-8;
  s.conductivity = 100.0;
  s.resistance_slope = 0.1;
  s.resistance = 1.0;
  s.density = 21450.0;
  s.specific_heat = 133.0;
  s.substrate_temperature = 300.0;
  const double i0 = 10e-3;
  const Drive d{i0 / std::numbers::sqrt2, 1.0};
  const double c10 = condition_10(s, d, 1);
  const bool ok_value = std::abs(c10 / 1e-3 - 1.0) <= 0.05;

  const double gamma = time_constant(s);
  const Drive dd{d.current_rms, 1.0 / (2.0 * gamma)};
  fdm::SolveOptions with_c;
  with_c.include_feedback = true;
  const auto off = fdm::oracle_point(s, dd, fdm::GridSpec{});
  const auto on = fdm::oracle_point(s, dd, fdm::GridSpec{}, with_c);
  const double shift = std::abs(on.amplitude_rms / off.amplitude_rms - 1.0);
  report("6", ok_value && shift < 5e-3,
         fmt("condition (10) for I0=10 mA, R'=0.1 Ohm/K, L=1 mm, S=1e-2 mm^2, kappa=100: %.4e (want 1.0e-3 +-5%%); "
             "c-term shift of oracle V3w at 2wg=1: %.4f%%",
             c10, 100 * shift));
}

void criterion_7() {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  const fdm::GridSpec grid;
  const auto reduced = reduced_grid(41, 4.0);
  const char* ids[] = {"7a", "7b", "7c"};
  const double products[] = {0.0, 0.1, 0.5};
  fdm::ApparentFromOracle lossless{};
  for (int k = 0; k < 3; ++k) {
    const double h = products[k];
    const auto r = fdm::apparent_from_oracle(s, kCurrent, grid, h / gamma, reduced, FitModel::corrected);
    if (k == 0) lossless = r;
    const double ek = r.kappa_ap / (s.conductivity * (1.0 + h)) - 1.0;
    const double eg = r.gamma_ap / (gamma / (1.0 + h)) - 1.0;
    const double ec = r.cp / s.specific_heat - 1.0;
    const double rk = r.kappa_ap / lossless.kappa_ap / (1.0 + h) - 1.0;
    const double rg = r.gamma_ap / lossless.gamma_ap * (1.0 + h) - 1.0;
    const double rc = r.cp / lossless.cp - 1.0;
    report(ids[k], std::abs(ek) <= 0.02 && std::abs(eg) <= 0.02 && std::abs(ec) <= 0.02,
           fmt("oracle sweep, g*gamma=%.1f, corrected fit: kappa_ap/(kappa(1+gg)) %+.2f%%, gamma_ap(1+gg)/gamma "
               "%+.2f%%, cp %+.2f%% (want each within 2%%)",
               h, 100 * ek, 100 * eg, 100 * ec) +
               fmt(" | relative to the lossless fit: %+.2f%%, %+.2f%%, %+.2f%%", 100 * rk, 100 * rg, 100 * rc));
  }

  Specimen thin;
  thin.length = 1e-3;
  thin.diameter = 10e-6;
  thin.area = kPi * 10e-6 * 10e-6 / 4.0;
  thin.conductivity = 100.0;
  thin.density = 21450.0;
  thin.specific_heat = 133.0;
  thin.resistance = 1.0;
  thin.resistance_slope = 0.004;
  thin.substrate_temperature = 300.0;
  thin.emissivity = 1.0;
  const double gg = condition_31(thin, radiation_g(thin));
  report("7d", std::abs(gg / 2.5e-3 - 1.0) <= 0.05,
         fmt("radiation, eps=1, L=1 mm, D=10 um, kappa=100, 300 K: g*gamma = %.4e (want 2.5e-3 +-5%%)", gg));

  const double g = radiation_g(wire());
  report("7e", std::abs(g / 0.44 - 1.0) <= 0.05,
         fmt("radiation, eps=1, platinum D=20 um at 300 K: g = %.4f 1/s (want 0.44 +-5%%)", g));
}

void criterion_8() {
  bool ok = true;
  std::string detail;

  const double kappa = 71.6;
  const double gamma = 0.25;
  double worst_cp = 0.0;
  for (double h : {0.0, 0.01, 0.1, 0.5, 2.0}) {
    const double a = specific_heat((1.0 + h) * kappa, gamma / (1.0 + h), 21450.0, 8e-3);
    const double b = specific_heat(kappa, gamma, 21450.0, 8e-3);
    worst_cp = std::max(worst_cp, std::abs(a / b - 1.0));
  }
  ok &= worst_cp < 1e-14;
  detail += fmt("cp invariance %.1e; ", worst_cp);

  const Specimen s = wire();
  const Drive d1 = Drive::at_frequency(kCurrent, 0.3);
  const Drive d2 = Drive::at_frequency(2.0 * kCurrent, 0.3);
  const double cube = v3w_phasor(s, d2).amplitude_rms / v3w_phasor(s, d1).amplitude_rms / 8.0 - 1.0;
  ok &= std::abs(cube) < 1e-12;
  detail += fmt("I^3 scaling %.1e; ", std::abs(cube));

  double edge = 0.0;
  double sym = 0.0;
  for (double t : {0.0, 0.37, 1.1}) {
    edge = std::max(edge, std::abs(temperature_profile(s, d1, 0.0, t)));
    edge = std::max(edge, std::abs(temperature_profile(s, d1, s.length, t)));
    for (double u : {0.1, 0.25, 0.4}) {
      const double a = temperature_profile(s, d1, u * s.length, t);
      const double b = temperature_profile(s, d1, (1.0 - u) * s.length, t);
      sym = std::max(sym, std::abs(a - b) / std::abs(a));
    }
  }
  ok &= edge < 1e-12 && sym < 1e-12;
  detail += fmt("boundary %.1e K, symmetry %.1e; ", edge, sym);

  const int spp = 64;
  std::vector<double> v(spp * 8);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(2.0 * kPi * static_cast<double>(i) / spp);
  const double leak = demodulate(v, spp, 3).amplitude_rms;
  ok &= leak < 1e-12;
  detail += fmt("lock-in leakage %.1e; ", leak);

  RunConfig cfg;
  cfg.specimen = s;
  cfg.current_rms = kCurrent;
  NoiseSpec noise{0.01, 0.002, 42};
  const SweepDataset data = generate_sweep(cfg, noise, Engine::spectral);
  const std::string csv = emit_sweep_csv(data);
  const SweepDataset back = parse_sweep_csv(csv);
  const bool csv_ok = back.points == data.points && back.known == data.known && emit_sweep_csv(back) == csv;
  ok &= csv_ok;
  detail += std::string("CSV round-trip ") + (csv_ok ? "byte-stable" : "BROKEN") + "; ";

  cfg.noise = noise;
  cfg.pipeline.temperatures = {10.0, 300.0};
  const std::string ini = emit_config(cfg);
  const RunConfig parsed = parse_config(ini);
  const bool ini_ok = parsed == cfg && emit_config(parsed) == ini;
  ok &= ini_ok;
  detail += std::string("config round-trip ") + (ini_ok ? "byte-stable" : "BROKEN");

  report("8", ok, detail);
}

void criterion_9() {
  // Functional forms on synthetic inputs; measured platinum and nanotube data are out of scope.
  const Specimen s = wire();
  const double gamma = time_constant(s);
  double worst_shape = 0.0;
  double worst_phase = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 10.0}) {
    const Drive d{kCurrent, x / (2.0 * gamma)};
    const Phasor3w p = v3w_first_term(s, d);
    const double shape = p.amplitude_rms / v3w_low_freq_limit(s, d) * std::sqrt(1.0 + x * x);
    worst_shape = std::max(worst_shape, std::abs(shape - 1.0));
    worst_phase = std::max(worst_phase, std::abs(std::tan(fold_phase(p.phase, s.resistance_slope)) / x - 1.0));
  }
  // S chosen so that kappa (R S / L) / T = 2.53e-8.
  const double area = 2.53e-8 * 290.0 / 50.6 / 2.0;
  const double wf = wiedemann_franz(50.6, 2.0, 1.0, area, 290.0);
  const bool ok = worst_shape < 1e-12 && worst_phase < 1e-12 && std::abs(wf / 2.53e-8 - 1.0) < 1e-12;
  report("9", ok,
         fmt("declared: measured Pt/nanotube values are not reproduced; functional forms only: "
             "1/sqrt(1+x^2) dev %.1e, tan(phi)=2wg dev %.1e, Wiedemann-Franz arithmetic %.4e",
             worst_shape, worst_phase, wf));
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "three_omega/config.hpp"
#include "three_omega/errors.hpp"
#include "three_omega/fitter.hpp"
#include "three_omega/oracle_sweep.hpp"
#include "three_omega/spectral.hpp"
#include "three_omega/sweep.hpp"

using namespace three_omega;

namespace {

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

RunConfig sweep_config(int n_max) {
  RunConfig c;
  c.specimen = wire();
  c.current_rms = 2e-3;
  c.n_max = n_max;
  c.frequencies.kind = FrequencyPlan::Kind::reduced;
  c.frequencies.reduced_max = 4.0;
  c.frequencies.points = 41;
  return c;
}

}  // namespace

TEST_CASE("leading-mode data fitted with the leading-mode model round-trips exactly") {
  const RunConfig c = sweep_config(1);
  const SweepDataset data = simulate_sweep(c, Engine::spectral);
  FitOptions o;
  o.model = FitModel::first_term;
  const FitResult f = fit_amplitude(data, o);
  CHECK(f.kappa == doctest::Approx(c.specimen.conductivity).epsilon(1e-9));
  CHECK(f.gamma == doctest::Approx(time_constant(c.specimen)).epsilon(1e-9));
  CHECK(f.cp == doctest::Approx(c.specimen.specific_heat).epsilon(1e-9));
  CHECK(f.residual_norm < 1e-10);
  CHECK(f.diagnostics.converged);
  CHECK(f.points_used == 41);
}

TEST_CASE("phase law recovers gamma from leading-mode phases") {
  const RunConfig c = sweep_config(1);
  const SweepDataset data = simulate_sweep(c, Engine::spectral);
  const PhaseFit p = fit_phase(data, 4.0);
  CHECK(p.gamma == doctest::Approx(time_constant(c.specimen)).epsilon(1e-10));
  CHECK_FALSE(p.high_frequency_bias);
}

TEST_CASE("1% amplitude noise: corrected fit recovers kappa and gamma within 2%") {
  RunConfig c = sweep_config(99);
  const NoiseSpec noise{0.01, 0.0, 20240501};
  const SweepDataset data = generate_sweep(c, noise, Engine::spectral);
  FitOptions o;
  o.model = FitModel::corrected;
  const FitResult f = fit_amplitude(data, o);
  CHECK(std::abs(f.kappa / c.specimen.conductivity - 1.0) < 0.02);
  CHECK(std::abs(f.gamma / time_constant(c.specimen) - 1.0) < 0.02);
  CHECK(f.kappa_se > 0.0);
  CHECK(f.gamma_se > 0.0);
}

TEST_CASE("seeded noise is deterministic") {
  const RunConfig c = sweep_config(99);
  const NoiseSpec noise{0.02, 0.01, 99};
  CHECK(generate_sweep(c, noise, Engine::spectral) == generate_sweep(c, noise, Engine::spectral));
  NoiseSpec other = noise;
  other.seed = 100;
  CHECK_FALSE(generate_sweep(c, noise, Engine::spectral).points ==
              generate_sweep(c, other, Engine::spectral).points);
}

TEST_CASE("degenerate data raise FitError") {
  RunConfig c = sweep_config(1);
  SweepDataset data = simulate_sweep(c, Engine::spectral);
  SweepDataset flat = data;
  for (auto& p : flat.points) p.amplitude_rms = 1e-4;
  CHECK_THROWS_AS(fit_amplitude(flat, FitOptions{}), FitError);

  SweepDataset few = data;
  few.points.resize(3);
  CHECK_THROWS(fit_amplitude(few, FitOptions{}));

  FitOptions phase_model;
  phase_model.model = FitModel::phase;
  CHECK_THROWS_AS(fit_amplitude(data, phase_model), FitError);

  SweepDataset no_phase = data;
  for (auto& p : no_phase.points) p.phase_deg.reset();
  CHECK_THROWS_AS(fit_phase(no_phase), InputError);
}

TEST_CASE("window re-selection drops points beyond 2 w gamma = window") {
  RunConfig c = sweep_config(99);
  c.frequencies.reduced_max = 12.0;
  c.frequencies.points = 60;
  const SweepDataset data = simulate_sweep(c, Engine::spectral);
  FitOptions o;
  o.model = FitModel::corrected;
  const FitResult f = fit_amplitude(data, o);
  CHECK(f.window_hi <= 4.0 + 1e-12);
  CHECK(f.points_used < data.points.size());
  CHECK(std::abs(f.cp / c.specimen.specific_heat - 1.0) < 0.02);
}

TEST_CASE("diagnostics report condition 10 and the loss product") {
  const RunConfig c = sweep_config(99);
  const SweepDataset data = simulate_sweep(c, Engine::spectral);
  const FitResult f = fit_amplitude(data, FitOptions{});
  CHECK(f.diagnostics.condition_10 ==
        doctest::Approx(condition_10(c.specimen, Drive{c.current_rms, 1.0})).epsilon(0.05));
  REQUIRE(f.diagnostics.loss_product.has_value());
  CHECK(*f.diagnostics.loss_product > 0.0);
}

TEST_CASE("property: cp is invariant under the apparent-parameter map") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> uk(1.0, 500.0);
  std::uniform_real_distribution<double> ug(1e-3, 2.0);
  std::uniform_real_distribution<double> uh(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double kappa = uk(rng);
    const double gamma = ug(rng);
    const double g = uh(rng) / gamma;
    const ApparentParameters ap = apparent_params(kappa, gamma, g);
    CHECK(ap.kappa == doctest::Approx(kappa * (1.0 + g * gamma)).epsilon(1e-14));
    CHECK(specific_heat(ap.kappa, ap.gamma, 21450.0, 8e-3) ==
          doctest::Approx(specific_heat(kappa, gamma, 21450.0, 8e-3)).epsilon(1e-14));
  }
}

TEST_CASE("spectral loss model matches the apparent-parameter algebra for the leading mode") {
  Specimen s = wire();
  const double gamma = time_constant(s);
  const double h = 0.3;
  const ApparentParameters ap = apparent_params(s.conductivity, gamma, h / gamma);
  Specimen app = s;
  app.conductivity = ap.kappa;
  app.specific_heat = specific_heat(ap.kappa, ap.gamma, s.density, s.length);
  for (double x : {0.1, 1.0, 3.0}) {
    const Drive d{2e-3, x / (2.0 * gamma)};
    CHECK(v3w_phasor(s, d, SeriesControl{1}, h / gamma).amplitude_rms ==
          doctest::Approx(v3w_phasor(app, d, SeriesControl{1}).amplitude_rms).epsilon(1e-12));
  }
}

TEST_CASE("radiative apparent conductivity and Wiedemann-Franz ratio") {
  const double k_ap = radiative_apparent_kappa(100.0, 1.0, 300.0, 1e-3, 10e-6);
  CHECK(k_ap == doctest::Approx(100.0 + 16.0 * kStefanBoltzmann * 2.7e7 * 1e-6 / (kPi * kPi * 10e-6)));
  CHECK(wiedemann_franz(70.0, 2.0, 8e-3, 3e-10, 300.0) == doctest::Approx(70.0 * 2.0 * 3e-10 / (8e-3 * 300.0)));
}

TEST_CASE("oracle dataset agrees with the spectral engine pointwise") {
  RunConfig c = sweep_config(99);
  c.frequencies.points = 12;
  const SweepDataset a = simulate_sweep(c, Engine::spectral);
  const SweepDataset b = simulate_sweep(c, Engine::oracle);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(b.points[i].amplitude_rms == doctest::Approx(a.points[i].amplitude_rms).epsilon(5e-3));
    CHECK(std::abs(*b.points[i].phase_deg - *a.points[i].phase_deg) < 0.5);
  }
}

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "three_omega/core_model.hpp"
#include "three_omega/errors.hpp"
#include "three_omega/fdm.hpp"
#include "three_omega/spectral.hpp"

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

}  // namespace

TEST_CASE("validation names the offending field") {
  Specimen s = wire();
  s.length = -1.0;
  try {
    validate(s);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.field() == "length");
  }
  s = wire();
  s.resistance_slope = 0.0;
  CHECK_THROWS_AS(validate(s), ParameterError);
  s = wire();
  s.emissivity = 1.5;
  CHECK_THROWS_AS(validate(s), ParameterError);
  CHECK_THROWS_AS(validate(Drive{0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(validate(Drive{1e-3, -1.0}), ParameterError);
  CHECK_NOTHROW(validate(wire()));
}

TEST_CASE("area and diameter consistency is a warning, not an error") {
  Specimen s = wire();
  CHECK(consistency_warnings(s).empty());
  s.area *= 1.2;
  CHECK(consistency_warnings(s).size() == 1);
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("derived thermal quantities") {
  const Specimen s = wire();
  const Drive d{5e-3, 10.0};
  const DerivedThermal t = derive_thermal(s, d);
  const double alpha = s.conductivity / (s.density * s.specific_heat);
  CHECK(t.diffusivity == doctest::Approx(alpha).epsilon(1e-14));
  CHECK(t.time_constant == doctest::Approx(s.length * s.length / (kPi * kPi * alpha)).epsilon(1e-14));
  const double i0 = d.peak_current();
  CHECK(t.dc_rise ==
        doctest::Approx(2.0 * i0 * i0 * s.resistance * s.length / (kPi * kPi * kPi * s.conductivity * s.area))
            .epsilon(1e-13));
}

TEST_CASE("loss rates") {
  Specimen s = wire();
  const double g = radiation_g(s);
  CHECK(g == doctest::Approx(16.0 * kStefanBoltzmann * std::pow(300.0, 3) / (s.density * s.specific_heat * 20e-6)));
  s.surface_conductance = 2.0;
  CHECK(convection_g(s) == doctest::Approx(4.0 * 2.0 / (s.density * s.specific_heat * 20e-6)));
  CHECK(loss_rate(s, LossModel::both) == doctest::Approx(g + convection_g(s)));
  CHECK(loss_rate(s, LossModel::none) == 0.0);

  Specimen no_d = wire();
  no_d.diameter.reset();
  CHECK_THROWS_AS(radiation_g(no_d), ConfigError);
  Specimen no_eps = wire();
  no_eps.emissivity.reset();
  CHECK_THROWS_AS(radiation_g(no_eps), ConfigError);
  CHECK_THROWS_AS(convection_g(wire()), ConfigError);
}

TEST_CASE("condition thresholds classify") {
  const ConditionThresholds t;
  CHECK(classify(0.01, t) == ConditionStatus::ok);
  CHECK(classify(0.1, t) == ConditionStatus::warn);
  CHECK(classify(0.3, t) == ConditionStatus::fail);
  CHECK(condition_10(wire(), Drive{1e-3, 1.0}, 3) ==
        doctest::Approx(condition_10(wire(), Drive{1e-3, 1.0}, 1) / 9.0));
}

TEST_CASE("phase folding follows the sign of dR/dT") {
  for (double phi : {0.0, 0.3, 1.2, 1.5}) {
    CHECK(fold_phase(kPi - phi, 1.0) == doctest::Approx(phi).epsilon(1e-14));
    CHECK(fold_phase(-phi, -1.0) == doctest::Approx(phi).epsilon(1e-14));
    CHECK(fold_phase(unfold_phase(phi, 1.0), 1.0) == doctest::Approx(phi).epsilon(1e-14));
    CHECK(fold_phase(unfold_phase(phi, -1.0), -1.0) == doctest::Approx(phi).epsilon(1e-14));
  }
  CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
}

TEST_CASE("dc profile is the parabola b x (L - x) / (4 alpha)") {
  const Specimen s = wire();
  const Drive d{5e-3, 3.0};
  const double b = heating_rate(s, d);
  const double alpha = thermal_diffusivity(s);
  for (double u : {0.1, 0.3, 0.5, 0.77}) {
    const double x = u * s.length;
    CHECK(dc_temperature_profile(s, d, x, SeriesControl{4001}) ==
          doctest::Approx(b * x * (s.length - x) / (4.0 * alpha)).epsilon(1e-9));
  }
  // The centre value is pi^3/32 of the dc rise parameter 2 gamma b / pi.
  const double centre = dc_temperature_profile(s, d, s.length / 2, SeriesControl{4001});
  CHECK(centre / derive_thermal(s, d).dc_rise == doctest::Approx(kPi * kPi * kPi / 32.0).epsilon(1e-9));
}

TEST_CASE("3-omega phasor matches a brute-force DFT of I(t) delta R(t)") {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  for (double x : {0.2, 1.0, 3.0}) {
    const Drive d{5e-3, x / (2.0 * gamma)};
    const int n = 720;
    const double period = 2.0 * kPi / d.omega;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = period * i / n;
      const double v = d.peak_current() * std::sin(d.omega * t) * resistance_fluctuation(s, d, t, SeriesControl{99});
      acc += v * std::complex<double>(std::sin(3.0 * d.omega * t), std::cos(3.0 * d.omega * t));
    }
    acc *= std::sqrt(2.0) / n;
    const Phasor3w p = v3w_phasor(s, d, SeriesControl{99});
    CHECK(std::abs(acc) == doctest::Approx(p.amplitude_rms).epsilon(1e-9));
    CHECK(std::arg(acc) == doctest::Approx(p.phase).epsilon(1e-9));
  }
}

TEST_CASE("normalized mode sum: leading term, time average, loss scaling") {
  CHECK(std::abs(normalized_mode_sum(0.0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(normalized_mode_sum(0.0, 999)) == doctest::Approx(std::pow(kPi, 4) / 96.0).epsilon(1e-10));
  for (double h : {0.1, 0.5, 2.0}) {
    CHECK(std::abs(normalized_mode_sum(0.0, 1, h)) == doctest::Approx(1.0 / (1.0 + h)).epsilon(1e-14));
  }
  for (double x : {0.5, 2.0, 7.0}) {
    const auto z = normalized_mode_sum(x, 1);
    CHECK(std::abs(z) == doctest::Approx(1.0 / std::sqrt(1.0 + x * x)).epsilon(1e-14));
  }
  const std::vector<double> xs = {0.0, 0.3, 1.0, 4.0, 11.0};
  const auto batch = normalized_mode_sum(xs, 99, 0.2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto one = normalized_mode_sum(xs[i], 99, 0.2);
    CHECK(batch[i].real() == doctest::Approx(one.real()).epsilon(1e-13));
    CHECK(batch[i].imag() == doctest::Approx(one.imag()).epsilon(1e-13));
  }
}

TEST_CASE("leading-mode closed form agrees with the series truncated at n = 1") {
  const Specimen s = wire();
  for (double f : {0.05, 0.5, 5.0}) {
    const Drive d = Drive::at_frequency(3e-3, f);
    const Phasor3w a = v3w_first_term(s, d);
    const Phasor3w b = v3w_phasor(s, d, SeriesControl{1});
    CHECK(a.amplitude_rms == doctest::Approx(b.amplitude_rms).epsilon(1e-13));
    CHECK(a.phase == doctest::Approx(b.phase).epsilon(1e-13));
  }
}

TEST_CASE("negative dR/dT flips the lock-in phase but not the folded phase") {
  Specimen pos = wire();
  Specimen neg = wire();
  neg.resistance_slope = -pos.resistance_slope;
  const Drive d = Drive::at_frequency(3e-3, 0.4);
  const Phasor3w a = v3w_phasor(pos, d);
  const Phasor3w b = v3w_phasor(neg, d);
  CHECK(a.amplitude_rms == doctest::Approx(b.amplitude_rms));
  CHECK(fold_phase(a.phase, 1.0) == doctest::Approx(fold_phase(b.phase, -1.0)).epsilon(1e-13));
}

TEST_CASE("error curves and grids reject bad input") {
  const std::vector<double> bad = {0.0, -0.1};
  CHECK_THROWS_AS(error_curves(bad), ParameterError);
  CHECK_THROWS_AS(temperature_profile(wire(), Drive{1e-3, 1.0}, -1e-6, 0.0), ParameterError);
  const auto g = uniform_grid(10.0, 0.1);
  CHECK(g.size() == 101);
  CHECK(g.back() == doctest::Approx(10.0));
}

TEST_CASE("property: temperature profile symmetric, zero at the ends, I^2 scaling") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.01, 0.49);
  std::uniform_real_distribution<double> freq(0.01, 20.0);
  const Specimen s = wire();
  for (int k = 0; k < 50; ++k) {
    const Drive d = Drive::at_frequency(2e-3, freq(rng));
    const double t = u(rng);
    const double x = u(rng) * s.length;
    const double a = temperature_profile(s, d, x, t);
    CHECK(a == doctest::Approx(temperature_profile(s, d, s.length - x, t)).epsilon(1e-12));
    CHECK(std::abs(temperature_profile(s, d, 0.0, t)) < 1e-15);
    const Drive d2{2.0 * d.current_rms, d.omega};
    CHECK(temperature_profile(s, d2, x, t) == doctest::Approx(4.0 * a).epsilon(1e-12));
  }
}

TEST_CASE("fdm steady profile reproduces the discrete parabola and balances heat") {
  const Specimen s = wire();
  const double q = 2.5;  // K/s
  const int nx = 63;
  const auto u = fdm::steady_profile(s, q, nx);
  REQUIRE(u.size() == static_cast<std::size_t>(nx + 2));
  const double alpha = thermal_diffusivity(s);
  for (int i = 0; i < nx + 2; ++i) {
    const double x = s.length * i / (nx + 1);
    CHECK(u[static_cast<std::size_t>(i)] ==
          doctest::Approx(q * x * (s.length - x) / (2.0 * alpha)).epsilon(1e-9).scale(1e-12));
  }
  const double generated = q * s.density * s.specific_heat * s.area * s.length;
  CHECK(fdm::end_heat_flux(s, u) == doctest::Approx(generated).epsilon(1e-9));
  CHECK(fdm::integrate_profile(u, s.length) ==
        doctest::Approx(q * std::pow(s.length, 3) / (12.0 * alpha)).epsilon(1e-3));
}

TEST_CASE("free relaxation of the fundamental mode decays with time constant gamma") {
  const Specimen s = wire();
  const double gamma = time_constant(s);
  const int nx = 255;
  std::vector<double> init(nx + 2, 0.0);
  for (int i = 0; i < nx + 2; ++i) init[static_cast<std::size_t>(i)] = std::sin(kPi * i / (nx + 1));
  const double dt = gamma / 2000.0;
  const auto a = fdm::relax_fundamental_mode(s, init, dt, 2000, 1000);
  REQUIRE(a.size() == 3);
  // log-linear fit through the three samples
  const double rate = -(std::log(a[2]) - std::log(a[0])) / (2000 * dt);
  CHECK(1.0 / rate == doctest::Approx(gamma).epsilon(2e-4));
}

TEST_CASE("fdm solve: budget exhaustion and grid validation") {
  const Specimen s = wire();
  const Drive d{2e-3, 10.0 / (2.0 * time_constant(s))};
  fdm::GridSpec tight;
  tight.n_periods = 2;
  tight.periodicity_tol = 1e-15;
  CHECK_THROWS_AS(fdm::solve(s, d, tight), ConvergenceError);

  fdm::GridSpec bad;
  bad.samples_per_period = 50;  // does not divide 512
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = fdm::GridSpec{};
  bad.nx = 2;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("fdm trace arrays are aligned and periodic") {
  const Specimen s = wire();
  const Drive d{2e-3, 1.0 / (2.0 * time_constant(s))};
  const auto tr = fdm::solve(s, d, fdm::GridSpec{});
  CHECK(tr.times.size() == tr.voltage.size());
  CHECK(tr.times.size() == tr.resistance_change.size());
  CHECK(tr.times.size() == tr.center_temperature.size());
  CHECK(tr.times.size() == static_cast<std::size_t>(2 * tr.samples_per_period));
  CHECK(tr.periodicity_defect < fdm::GridSpec{}.periodicity_tol);
}

#include "three_omega/core_model.hpp"

#include <cmath>

#include "three_omega/errors.hpp"

namespace three_omega {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(field, "must be positive and finite, got " + std::to_string(value));
  }
}

}  // namespace

void validate(const Specimen& s) {
  require_positive(s.length, "length");
  require_positive(s.area, "area");
  require_positive(s.density, "density");
  require_positive(s.specific_heat, "specific_heat");
  require_positive(s.conductivity, "conductivity");
  require_positive(s.resistance, "resistance");
  require_positive(s.substrate_temperature, "substrate_temperature");
  if (!std::isfinite(s.resistance_slope) || s.resistance_slope == 0.0) {
    throw ParameterError("resistance_slope", "must be finite and non-zero (no 3-omega signal otherwise)");
  }
  if (s.diameter) require_positive(*s.diameter, "diameter");
  if (s.emissivity && !(*s.emissivity >= 0.0 && *s.emissivity <= 1.0)) {
    throw ParameterError("emissivity", "must lie in [0, 1]");
  }
  if (s.surface_conductance && !(*s.surface_conductance >= 0.0 && std::isfinite(*s.surface_conductance))) {
    throw ParameterError("surface_conductance", "must be non-negative");
  }
}

void validate(const Drive& d) {
  require_positive(d.current_rms, "current_rms");
  require_positive(d.omega, "omega");
}

std::vector<std::string> consistency_warnings(const Specimen& s) {
  std::vector<std::string> out;
  if (s.diameter) {
    const double round = kPi * *s.diameter * *s.diameter / 4.0;
    if (std::abs(s.area - round) > 0.05 * round) {
      out.push_back("area differs from pi*D^2/4 by " +
                    std::to_string(100.0 * (s.area - round) / round) + "%");
    }
  }
  return out;
}

double thermal_diffusivity(const Specimen& s) { return s.conductivity / (s.density * s.specific_heat); }

double time_constant(const Specimen& s) {
  return s.length * s.length / (kPi * kPi * thermal_diffusivity(s));
}

double heating_rate(const Specimen& s, const Drive& d) {
  const double i0 = d.peak_current();
  return i0 * i0 * s.resistance / (s.density * s.specific_heat * s.length * s.area);
}

double feedback_rate(const Specimen& s, const Drive& d) {
  const double i0 = d.peak_current();
  return i0 * i0 * s.resistance_slope / (s.density * s.specific_heat * s.length * s.area);
}

DerivedThermal derive_thermal(const Specimen& s, const Drive& d) {
  validate(s);
  validate(d);
  const double alpha = thermal_diffusivity(s);
  const double gamma = time_constant(s);
  // Centre dc accumulation from the mode sum: 2 gamma b / pi = 2 I0^2 R L / (pi^3 kappa S).
  const double delta0 = 2.0 * gamma * heating_rate(s, d) / kPi;
  return {alpha, gamma, delta0};
}

double condition_10(const Specimen& s, const Drive& d, int n) {
  validate(s);
  validate(d);
  if (n < 1) throw ParameterError("n", "mode index must be >= 1");
  const double i0 = d.peak_current();
  const double nn = static_cast<double>(n) * n;
  return i0 * i0 * std::abs(s.resistance_slope) * s.length / (nn * kPi * kPi * s.conductivity * s.area);
}

double radiation_g(const Specimen& s) {
  if (!s.diameter || !s.emissivity) {
    throw ConfigError("radiation loss needs both diameter and emissivity");
  }
  const double t0 = s.substrate_temperature;
  return 16.0 * *s.emissivity * kStefanBoltzmann * t0 * t0 * t0 /
         (s.density * s.specific_heat * *s.diameter);
}

double convection_g(const Specimen& s) {
  if (!s.diameter || !s.surface_conductance) {
    throw ConfigError("convection loss needs both diameter and surface conductance (eta)");
  }
  return 4.0 * *s.surface_conductance / (s.density * s.specific_heat * *s.diameter);
}

double loss_rate(const Specimen& s, LossModel model) {
  switch (model) {
    case LossModel::none: return 0.0;
    case LossModel::radiation: return radiation_g(s);
    case LossModel::convection: return convection_g(s);
    case LossModel::both: return radiation_g(s) + convection_g(s);
  }
  return 0.0;
}

double condition_31(const Specimen& s, double g) { return g * time_constant(s); }

ConditionStatus classify(double value, const ConditionThresholds& t) {
  if (value >= t.fail) return ConditionStatus::fail;
  if (value >= t.warn) return ConditionStatus::warn;
  return ConditionStatus::ok;
}

const char* to_string(ConditionStatus status) {
  switch (status) {
    case ConditionStatus::ok: return "ok";
    case ConditionStatus::warn: return "warn";
    case ConditionStatus::fail: return "fail";
  }
  return "?";
}

const char* to_string(LossModel model) {
  switch (model) {
    case LossModel::none: return "none";
    case LossModel::radiation: return "radiation";
    case LossModel::convection: return "convection";
    case LossModel::both: return "both";
  }
  return "?";
}

double wrap_phase(double a) {
  a = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double fold_phase(double lockin_phase, double resistance_slope) {
  return wrap_phase(resistance_slope > 0.0 ? kPi - lockin_phase : -lockin_phase);
}

double unfold_phase(double phi, double resistance_slope) {
  return wrap_phase(resistance_slope > 0.0 ? kPi - phi : -phi);
}

}  // namespace three_omega

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace three_omega {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kStefanBoltzmann = 5.67e-8;  // W/(m^2 K^4)
inline constexpr double kLorenzNumber = 2.45e-8;     // W Ohm/K^2, free-electron value

/// A rod or filament suspended between two heat-sunk voltage contacts.
/// All fields are SI and refer to the substrate temperature `substrate_temperature`.
struct Specimen {
  double length = 0.0;                 ///< distance between voltage contacts, m
  double area = 0.0;                   ///< cross section, m^2
  std::optional<double> diameter;      ///< m, cylindrical specimens only
  double density = 0.0;                ///< kg/m^3
  double specific_heat = 0.0;          ///< J/(kg K)
  double conductivity = 0.0;           ///< W/(m K)
  double resistance = 0.0;             ///< Ohm
  double resistance_slope = 0.0;       ///< dR/dT, Ohm/K, either sign
  double substrate_temperature = 0.0;  ///< K
  std::optional<double> emissivity;    ///< [0, 1]
  std::optional<double> surface_conductance;  ///< gas-convection coefficient, W/(m^2 K)

  bool operator==(const Specimen&) const = default;
};

/// AC excitation I(t) = sqrt(2) * current_rms * sin(omega t).
struct Drive {
  double current_rms = 0.0;  ///< A
  double omega = 0.0;        ///< rad/s

  double peak_current() const noexcept { return std::numbers::sqrt2 * current_rms; }
  double frequency() const noexcept { return omega / (2.0 * kPi); }
  static Drive at_frequency(double current_rms, double frequency_hz) {
    return Drive{current_rms, 2.0 * kPi * frequency_hz};
  }

  bool operator==(const Drive&) const = default;
};

struct DerivedThermal {
  double diffusivity;    ///< kappa / (rho cp), m^2/s
  double time_constant;  ///< L^2 / (pi^2 alpha), s
  double dc_rise;        ///< 2 gamma b / pi, K
};

/// Throws ParameterError naming the first offending field.
void validate(const Specimen& specimen);
void validate(const Drive& drive);

/// Soft consistency checks; currently only area vs pi D^2 / 4 (5% tolerance).
std::vector<std::string> consistency_warnings(const Specimen& specimen);

DerivedThermal derive_thermal(const Specimen& specimen, const Drive& drive);

double thermal_diffusivity(const Specimen& specimen);
double time_constant(const Specimen& specimen);

/// Volumetric heating rate b = I0^2 R / (rho cp L S), K/s.
double heating_rate(const Specimen& specimen, const Drive& drive);

/// Coefficient of the self-heating feedback term, c = I0^2 R' / (rho cp L S), 1/s.
double feedback_rate(const Specimen& specimen, const Drive& drive);

/// Heating inhomogeneity from the resistance fluctuation relative to axial
/// conduction for Fourier mode n: I0^2 |R'| L / (n^2 pi^2 kappa S).
double condition_10(const Specimen& specimen, const Drive& drive, int n = 1);

/// Linearized radiative loss rate 16 eps sigma T0^3 / (rho cp D), 1/s.
double radiation_g(const Specimen& specimen);

/// Gas-convection loss rate 4 eta / (rho cp D), 1/s.
double convection_g(const Specimen& specimen);

enum class LossModel { none, radiation, convection, both };

/// Total radial loss rate for the selected mechanisms (they add linearly).
double loss_rate(const Specimen& specimen, LossModel model);

/// Radial loss relative to axial conduction, g * gamma.
double condition_31(const Specimen& specimen, double g);

struct ConditionThresholds {
  double warn = 0.05;
  double fail = 0.2;
  bool operator==(const ConditionThresholds&) const = default;
};

enum class ConditionStatus { ok, warn, fail };

ConditionStatus classify(double value, const ConditionThresholds& thresholds);
const char* to_string(ConditionStatus status);
const char* to_string(LossModel model);

/// Lock-in phase convention. With the reference zeroed on the 1-omega
/// voltage, the 3-omega reading is pi - phi for R' > 0 and -phi for R' < 0,
/// where tan(phi) = 2 omega gamma for the leading mode.
double fold_phase(double lockin_phase, double resistance_slope);
double unfold_phase(double phi, double resistance_slope);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

}  // namespace three_omega

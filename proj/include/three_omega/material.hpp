#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace three_omega {

/// Bulk properties at one temperature, SI.
struct MaterialPoint {
  double density;            ///< kg/m^3
  double specific_heat;      ///< J/(kg K)
  double conductivity;       ///< W/(m K)
  double resistivity;        ///< Ohm m
  double resistivity_slope;  ///< Ohm m / K
};

class MaterialModel {
 public:
  virtual ~MaterialModel() = default;
  virtual MaterialPoint at(double temperature) const = 0;
  virtual std::string name() const = 0;
};

/// Synthetic platinum-like curves: Debye lattice plus electronic specific
/// heat, Bloch-Grueneisen resistivity with a residual term, and electronic
/// conductivity from the free-electron Lorenz number. Smooth on 5-400 K.
class PlatinumLike final : public MaterialModel {
 public:
  MaterialPoint at(double temperature) const override;
  std::string name() const override { return "platinum"; }

  static constexpr double kDensity = 21450.0;
  static constexpr double kMolarMass = 0.195084;      // kg/mol
  static constexpr double kDebyeTemperature = 240.0;  // K
  static constexpr double kSommerfeld = 6.8e-3;       // J/(mol K^2)
  static constexpr double kResidualResistivity = 1.0e-9;
  static constexpr double kResistivity273 = 9.8e-8;   // Ohm m at 273.15 K
};

/// Linear interpolation in a CSV table with header
/// `temperature_k,density,specific_heat,conductivity,resistivity,resistivity_slope`.
class TabulatedMaterial final : public MaterialModel {
 public:
  explicit TabulatedMaterial(const std::filesystem::path& path);
  MaterialPoint at(double temperature) const override;
  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::vector<double> t_;
  std::vector<MaterialPoint> rows_;
};

/// "platinum" or a path to a table.
std::unique_ptr<MaterialModel> make_material(const std::string& spec);

/// Debye integral 3 (T/theta)^3 int_0^{theta/T} x^4 e^x / (e^x - 1)^2 dx, so
/// the molar lattice heat is 3 R times this.
double debye_heat_fraction(double temperature, double debye_temperature);

/// int_0^z x^5 / ((e^x - 1)(1 - e^-x)) dx
double bloch_gruneisen_j5(double z);

}  // namespace three_omega

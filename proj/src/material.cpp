#include "three_omega/material.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "three_omega/core_model.hpp"
#include "three_omega/csv_io.hpp"
#include "three_omega/errors.hpp"

namespace three_omega {

namespace {

constexpr double kGasConstant = 8.314462618;

// Composite Simpson on [0, z] for an integrand that vanishes at 0.
template <typename F>
double simpson(F&& f, double z, int intervals) {
  if (z <= 0.0) return 0.0;
  const double h = z / intervals;
  double sum = f(z);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

// x^k e^-x / (1 - e^-x)^2, written to avoid overflow at large x.
double bose_kernel(double x, int k) {
  if (x < 1e-8) return std::pow(x, k - 2);
  const double em = std::exp(-x);
  const double d = -std::expm1(-x);
  return std::pow(x, k) * em / (d * d);
}

double bg_term(double t, double theta) {
  const double r = t / theta;
  return std::pow(r, 5) * bloch_gruneisen_j5(theta / t);
}

}  // namespace

double debye_heat_fraction(double temperature, double theta) {
  const double z = theta / temperature;
  const double integral = simpson([](double x) { return bose_kernel(x, 4); }, z, 2000);
  return 3.0 * integral / (z * z * z);
}

double bloch_gruneisen_j5(double z) {
  return simpson([](double x) { return bose_kernel(x, 5); }, z, 2000);
}

MaterialPoint PlatinumLike::at(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("temperature", "must be > 0");
  const double theta = kDebyeTemperature;
  const double lattice = 3.0 * kGasConstant * debye_heat_fraction(t, theta);
  const double cp = (lattice + kSommerfeld * t) / kMolarMass;

  static const double scale = (kResistivity273 - kResidualResistivity) / bg_term(273.15, theta);
  const double rho_e = kResidualResistivity + scale * bg_term(t, theta);
  const double z = theta / t;
  const double r = t / theta;
  const double slope =
      scale * (5.0 * std::pow(r, 4) / theta * bloch_gruneisen_j5(z) - std::pow(r, 5) * bose_kernel(z, 5) * theta / (t * t));
  const double kappa = kLorenzNumber * t / rho_e;
  return {kDensity, cp, kappa, rho_e, slope};
}

TabulatedMaterial::TabulatedMaterial(const std::filesystem::path& path) : name_(path.string()) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "temperature_k,density,specific_heat,conductivity,resistivity,resistivity_slope") {
        throw InputError(path.string() + ": unexpected material table header", line_no);
      }
      header = true;
      continue;
    }
    double v[6];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 6; ++i) {
      while (p < end && *p == ' ') ++p;
      const auto [ptr, ec] = std::from_chars(p, end, v[i]);
      if (ec != std::errc()) throw InputError(path.string() + ": bad number", line_no);
      p = ptr;
      while (p < end && *p == ' ') ++p;
      if (i < 5) {
        if (p == end || *p != ',') throw InputError(path.string() + ": expected 6 columns", line_no);
        ++p;
      }
    }
    if (p != end) throw InputError(path.string() + ": trailing text", line_no);
    if (!t_.empty() && !(v[0] > t_.back())) {
      throw InputError(path.string() + ": temperatures must increase", line_no);
    }
    t_.push_back(v[0]);
    rows_.push_back({v[1], v[2], v[3], v[4], v[5]});
  }
  if (t_.size() < 2) throw InputError(path.string() + ": material table needs at least two rows");
}

MaterialPoint TabulatedMaterial::at(double t) const {
  if (t < t_.front() || t > t_.back()) {
    throw ParameterError("temperature", "outside the material table range");
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - t_.begin()), t_.size() - 1);
  const std::size_t lo = hi - 1;
  const double u = (t - t_[lo]) / (t_[hi] - t_[lo]);
  auto lerp = [u](double a, double b) { return a + u * (b - a); };
  const auto& a = rows_[lo];
  const auto& b = rows_[hi];
  return {lerp(a.density, b.density), lerp(a.specific_heat, b.specific_heat), lerp(a.conductivity, b.conductivity),
          lerp(a.resistivity, b.resistivity), lerp(a.resistivity_slope, b.resistivity_slope)};
}

std::unique_ptr<MaterialModel> make_material(const std::string& spec) {
  if (spec == "platinum" || spec == "platinum-like") return std::make_unique<PlatinumLike>();
  return std::make_unique<TabulatedMaterial>(spec);
}

}  // namespace three_omega

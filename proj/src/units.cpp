#include "three_omega/units.hpp"

#include <charconv>
#include <cmath>
#include <span>
#include <system_error>
#include <utility>

#include "three_omega/errors.hpp"

namespace three_omega::units {

namespace {

// Scale is 10^exp10 * extra. Powers of ten are applied to the decimal text so
// "8 mm" and "0.008 m" give the same double.
struct UnitEntry {
  std::string_view symbol;  // normalized: no spaces, parentheses, '*' or middle dots; micro as 'u'
  int exp10;
  double extra = 1.0;
};

constexpr double kDeg = 3.14159265358979323846 / 180.0;

// clang-format off
constexpr UnitEntry kLength[] = {{"m", 0}, {"cm", -2}, {"mm", -3}, {"um", -6}, {"nm", -9}};
constexpr UnitEntry kArea[] = {{"m2", 0}, {"m^2", 0}, {"cm2", -4}, {"cm^2", -4},
                               {"mm2", -6}, {"mm^2", -6}, {"um2", -12}, {"um^2", -12}};
constexpr UnitEntry kCurrent[] = {{"A", 0}, {"mA", -3}, {"uA", -6}, {"nA", -9}};
constexpr UnitEntry kResistance[] = {{"Ohm", 0}, {"ohm", 0}, {"mOhm", -3}, {"kOhm", 3}};
constexpr UnitEntry kSlope[] = {{"Ohm/K", 0}, {"ohm/K", 0}, {"mOhm/K", -3}};
constexpr UnitEntry kTemperature[] = {{"K", 0}};
constexpr UnitEntry kDensity[] = {{"kg/m3", 0}, {"kg/m^3", 0}, {"g/cm3", 3}, {"g/cm^3", 3}};
constexpr UnitEntry kSpecificHeat[] = {{"J/kgK", 0}, {"J/gK", 3}};
constexpr UnitEntry kConductivity[] = {{"W/mK", 0}, {"W/cmK", 2}};
constexpr UnitEntry kSurface[] = {{"W/m2K", 0}, {"W/m^2K", 0}};
constexpr UnitEntry kFrequency[] = {{"Hz", 0}, {"kHz", 3}, {"mHz", -3}};
constexpr UnitEntry kTime[] = {{"s", 0}, {"ms", -3}, {"us", -6}};
constexpr UnitEntry kAngle[] = {{"rad", 0}, {"deg", 0, kDeg}};
constexpr UnitEntry kRate[] = {{"1/s", 0}, {"/s", 0}, {"s^-1", 0}};
// clang-format on

std::span<const UnitEntry> table(Quantity q) {
  switch (q) {
    case Quantity::dimensionless: return {};
    case Quantity::length: return kLength;
    case Quantity::area: return kArea;
    case Quantity::current: return kCurrent;
    case Quantity::resistance: return kResistance;
    case Quantity::resistance_slope: return kSlope;
    case Quantity::temperature: return kTemperature;
    case Quantity::density: return kDensity;
    case Quantity::specific_heat: return kSpecificHeat;
    case Quantity::conductivity: return kConductivity;
    case Quantity::surface_conductance: return kSurface;
    case Quantity::frequency: return kFrequency;
    case Quantity::time: return kTime;
    case Quantity::angle: return kAngle;
    case Quantity::rate: return kRate;
  }
  return {};
}

std::string normalize_unit(std::string_view u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const char c = u[i];
    if (c == ' ' || c == '(' || c == ')' || c == '*' || c == '\t') continue;
    // UTF-8 micro sign (C2 B5), Greek mu (CE BC), middle dot (C2 B7), Omega (CE A9)
    if (i + 1 < u.size()) {
      const auto a = static_cast<unsigned char>(c);
      const auto b = static_cast<unsigned char>(u[i + 1]);
      if ((a == 0xC2 && b == 0xB5) || (a == 0xCE && b == 0xBC)) {
        out += 'u';
        ++i;
        continue;
      }
      if (a == 0xC2 && b == 0xB7) {
        ++i;
        continue;
      }
      if (a == 0xCE && b == 0xA9) {
        out += "Ohm";
        ++i;
        continue;
      }
    }
    out += c;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Split {
  double value;
  std::string_view number;
  std::string_view unit;
};

// Splits "8.5e-3 mm" into number and unit text.
Split split(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    throw ConfigError("expected a number in '" + std::string(text) + "'");
  }
  return {value, std::string_view(first, static_cast<std::size_t>(ptr - first)),
          trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)))};
}

double shift_decimal(std::string_view number, int exp10) {
  if (exp10 == 0) return parse_number(number);
  std::string mant(number);
  int exp = exp10;
  const std::size_t e = mant.find_first_of("eE");
  if (e != std::string::npos) {
    exp += std::stoi(mant.substr(e + 1));
    mant.resize(e);
  }
  mant += 'e';
  mant += std::to_string(exp);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(mant.data(), mant.data() + mant.size(), value);
  if (ec != std::errc() || ptr != mant.data() + mant.size()) {
    throw ConfigError("number out of range: '" + std::string(number) + "'");
  }
  return value;
}

}  // namespace

double parse_number(std::string_view text) {
  const auto [value, number, rest] = split(text);
  (void)number;
  if (!rest.empty()) throw ConfigError("unexpected text after number: '" + std::string(text) + "'");
  return value;
}

double parse(std::string_view text, Quantity q) {
  const auto [value, number, unit_text] = split(text);
  if (unit_text.empty()) return value;
  const std::string unit = normalize_unit(unit_text);
  if (q == Quantity::dimensionless) {
    throw ConfigError("dimensionless value carries a unit: '" + std::string(text) + "'");
  }
  for (const auto& e : table(q)) {
    if (e.symbol == unit) return shift_decimal(number, e.exp10) * e.extra;
  }
  throw ConfigError("unit '" + std::string(unit_text) + "' does not fit this quantity (SI: " +
                    si_symbol(q) + ") in '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view text, Quantity q) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    items.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  // A unit on the final item is shared by unit-less items.
  std::string shared;
  if (!items.empty()) {
    shared = std::string(split(items.back()).unit);
  }
  std::vector<double> out;
  for (auto item : items) {
    if (item.empty()) throw ConfigError("empty item in list '" + std::string(text) + "'");
    const bool bare = split(item).unit.empty();
    out.push_back(bare && !shared.empty() ? parse(std::string(item) + " " + shared, q) : parse(item, q));
  }
  return out;
}

const char* si_symbol(Quantity q) {
  switch (q) {
    case Quantity::dimensionless: return "";
    case Quantity::length: return "m";
    case Quantity::area: return "m^2";
    case Quantity::current: return "A";
    case Quantity::resistance: return "Ohm";
    case Quantity::resistance_slope: return "Ohm/K";
    case Quantity::temperature: return "K";
    case Quantity::density: return "kg/m^3";
    case Quantity::specific_heat: return "J/(kg K)";
    case Quantity::conductivity: return "W/(m K)";
    case Quantity::surface_conductance: return "W/(m^2 K)";
    case Quantity::frequency: return "Hz";
    case Quantity::time: return "s";
    case Quantity::angle: return "rad";
    case Quantity::rate: return "1/s";
  }
  return "";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format(double value, Quantity q) {
  std::string out = format_double(value);
  const char* sym = si_symbol(q);
  if (*sym != '\0') {
    out += ' ';
    out += sym;
  }
  return out;
}

std::string format_list(const std::vector<double>& values, Quantity q) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  const char* sym = si_symbol(q);
  if (*sym != '\0' && !values.empty()) {
    out += ' ';
    out += sym;
  }
  return out;
}

}  // namespace three_omega::units

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace three_omega::units {

enum class Quantity {
  dimensionless,
  length,
  area,
  current,
  resistance,
  resistance_slope,
  temperature,
  density,
  specific_heat,
  conductivity,
  surface_conductance,
  frequency,
  time,
  angle,
  rate,
};

/// Parses "8 mm", "0.008", "20 um", "10mA" into SI. A bare number is taken as SI.
/// Throws ConfigError on an unknown or mismatched unit.
double parse(std::string_view text, Quantity quantity);

/// Comma-separated list; a trailing unit on the last item applies to the
/// items that have none ("1, 2, 5 Hz").
std::vector<double> parse_list(std::string_view text, Quantity quantity);

/// SI unit symbol used when writing values back out ("m", "m^2", "W/(m K)").
const char* si_symbol(Quantity quantity);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// format_double(value) followed by the SI symbol, if any.
std::string format(double value, Quantity quantity);

std::string format_list(const std::vector<double>& values, Quantity quantity);

/// Exact parse of a decimal number (no unit). Throws ConfigError.
double parse_number(std::string_view text);

}  // namespace three_omega::units

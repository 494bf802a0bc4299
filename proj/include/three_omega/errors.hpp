#pragma once

#include <stdexcept>
#include <string>

namespace three_omega {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter is outside its domain (negative length, zero dR/dT, ...).
class ParameterError : public Error {
 public:
  ParameterError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Missing or inconsistent configuration (unknown key, unit mismatch, missing D for loss).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (CSV rows, duplicate frequencies).
class InputError : public Error {
 public:
  InputError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The time-domain oracle did not reach a periodic steady state.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double defect) : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// The least-squares problem is degenerate or the window holds too few points.
class FitError : public Error {
 public:
  using Error::Error;
};

/// The sampled series cannot be demodulated (non-integer window, aliasing).
class DemodError : public Error {
 public:
  using Error::Error;
};

}  // namespace three_omega

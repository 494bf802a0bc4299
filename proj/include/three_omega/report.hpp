#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "three_omega/fitter.hpp"

namespace three_omega {

/// Ordered `key = value` lines.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, long long value);
  void add(std::string key, bool value);
  std::string str() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Fit summary for one dataset: parameters, standard errors, window,
/// diagnostics, the Wiedemann-Franz ratio, and the phase-law gamma if given.
Report fit_report(const SweepDataset& data, const FitResult& fit, const std::optional<PhaseFit>& phase);

}  // namespace three_omega

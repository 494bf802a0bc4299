#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "three_omega/core_model.hpp"
#include "three_omega/fdm.hpp"
#include "three_omega/fitter.hpp"

namespace three_omega {

enum class Engine { spectral, oracle };

const char* to_string(Engine engine);
Engine parse_engine(std::string_view text);
LossModel parse_loss_model(std::string_view text);

/// How the sweep frequencies are chosen.
struct FrequencyPlan {
  enum class Kind { list, range, reduced };
  Kind kind = Kind::reduced;
  std::vector<double> list_hz;  ///< Kind::list
  double min_hz = 0.0;          ///< Kind::range
  double max_hz = 0.0;
  bool log_spacing = true;
  int points = 41;              ///< Kind::range and Kind::reduced
  /// Kind::reduced: uniform 2 omega gamma grid (0, reduced_max] using the
  /// specimen's true gamma, `points` values, origin excluded.
  double reduced_max = 4.0;

  bool operator==(const FrequencyPlan&) const = default;
};

/// Frequencies in Hz, ascending. Throws ConfigError for an empty or invalid plan.
std::vector<double> plan_frequencies(const FrequencyPlan& plan, const Specimen& specimen);

struct NoiseSpec {
  double amplitude = 0.0;  ///< relative gaussian noise on V3w, fraction
  double phase = 0.0;      ///< gaussian noise on the phase, rad
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const NoiseSpec&) const = default;
};

struct PipelineConfig {
  std::vector<double> temperatures;  ///< K
  std::string material = "platinum";  ///< "platinum" or a path to a material table CSV
  /// When positive, the drive current at each T is set so that 2 gamma b / pi equals this, K.
  double target_dc_rise = 0.0;

  bool operator==(const PipelineConfig&) const = default;
};

struct RunConfig {
  Specimen specimen;
  double current_rms = 0.0;
  FrequencyPlan frequencies;

  Engine engine = Engine::spectral;
  int n_max = 99;
  bool include_feedback = false;
  LossModel loss = LossModel::none;
  fdm::GridSpec grid;

  FitOptions fit;
  NoiseSpec noise;

  std::string output_dir = "out";
  std::optional<std::string> input;

  PipelineConfig pipeline;

  bool operator==(const RunConfig&) const = default;
};

/// INI text with [specimen], [drive], [simulation], [fit], [noise], [io] and
/// [pipeline] sections. Values take unit suffixes ("8 mm", "10 mA").
/// Unknown sections or keys throw ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical INI: every field in SI with its unit, fixed key order, shortest
/// round-trip numbers. parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// Environment override for the output directory, if set.
std::string resolve_output_dir(const RunConfig& config);

inline constexpr const char* kOutputDirEnv = "THREE_OMEGA_OUTPUT_DIR";

}  // namespace three_omega

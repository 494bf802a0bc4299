#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "three_omega/fdm.hpp"
#include "three_omega/fitter.hpp"
#include "three_omega/spectral.hpp"

namespace three_omega {

/// Reads `freq_hz,v3w_vrms[,phase_deg][,sigma_vrms]` with `#` comments.
/// Comment lines of the form `# key = value` become metadata; the keys
/// current_rms, length, area, resistance, resistance_slope, density,
/// substrate_temperature, diameter, emissivity and surface_conductance (SI)
/// also fill the known parameters. Rows are sorted by frequency.
/// Throws InputError carrying the 1-based line number.
SweepDataset parse_sweep_csv(std::string_view text);
SweepDataset ingest_csv(const std::filesystem::path& path);

/// Inverse of parse_sweep_csv: metadata and known parameters as `# key = value`
/// lines, then the header and one row per point with shortest round-trip numbers.
std::string emit_sweep_csv(const SweepDataset& data);

/// time_s,voltage_v,dR_ohm,center_temp_k
std::string emit_trace_csv(const fdm::TraceResult& trace);

/// two_omega_gamma,exact,first_term,difference,relative
std::string emit_error_curves_csv(std::span<const ErrorCurveRow> rows);

struct PlotRow {
  double x;
  double y_data;
  double y_fit;
};

/// x,y_data,y_fit with a `# x = ..., y = ...` caption line.
std::string emit_plot_csv(std::span<const PlotRow> rows, std::string_view x_label, std::string_view y_label);

/// Writes `text` to `path`, creating parent directories. Throws InputError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace three_omega

#include "three_omega/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "three_omega/errors.hpp"
#include "three_omega/units.hpp"

namespace three_omega {

namespace {

using units::format_double;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

double cell(std::string_view text, const char* column, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InputError(std::string("bad ") + column + " value '" + std::string(text) + "'", line_no);
  }
  return v;
}

// Known-parameter keys carried in `# key = value` lines.
struct KnownKey {
  const char* name;
  double KnownParameters::*field;
};
constexpr KnownKey kRequiredKeys[] = {
    {"current_rms", &KnownParameters::current_rms},
    {"length", &KnownParameters::length},
    {"area", &KnownParameters::area},
    {"resistance", &KnownParameters::resistance},
    {"resistance_slope", &KnownParameters::resistance_slope},
    {"density", &KnownParameters::density},
    {"substrate_temperature", &KnownParameters::substrate_temperature},
};
struct OptionalKey {
  const char* name;
  std::optional<double> KnownParameters::*field;
};
constexpr OptionalKey kOptionalKeys[] = {
    {"diameter", &KnownParameters::diameter},
    {"emissivity", &KnownParameters::emissivity},
    {"surface_conductance", &KnownParameters::surface_conductance},
};

bool is_known_key(std::string_view key) {
  for (const auto& k : kRequiredKeys) {
    if (key == k.name) return true;
  }
  for (const auto& k : kOptionalKeys) {
    if (key == k.name) return true;
  }
  return false;
}

}  // namespace

SweepDataset parse_sweep_csv(std::string_view text) {
  SweepDataset data;
  struct Row {
    V3wPoint point;
    std::size_t line;
  };
  std::vector<Row> rows;
  bool header_seen = false;
  bool has_phase = false;
  bool has_sigma = false;
  std::size_t columns = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  // A UTF-8 byte order mark is tolerated.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key(trim(body.substr(0, eq)));
      const std::string value(trim(body.substr(eq + 1)));
      if (key.empty()) continue;
      if (is_known_key(key)) {
        const double v = cell(value, key.c_str(), line_no);
        for (const auto& k : kRequiredKeys) {
          if (key == k.name) data.known.*(k.field) = v;
        }
        for (const auto& k : kOptionalKeys) {
          if (key == k.name) data.known.*(k.field) = v;
        }
      } else {
        data.metadata[key] = value;
      }
      continue;
    }
    const auto cells = split_commas(line);
    if (!header_seen) {
      if (cells.size() < 2 || cells[0] != "freq_hz" || cells[1] != "v3w_vrms") {
        throw InputError("expected header freq_hz,v3w_vrms[,phase_deg][,sigma_vrms]", line_no);
      }
      for (std::size_t i = 2; i < cells.size(); ++i) {
        if (cells[i] == "phase_deg" && i == 2 && !has_phase) {
          has_phase = true;
        } else if (cells[i] == "sigma_vrms" && !has_sigma) {
          has_sigma = true;
        } else {
          throw InputError("unexpected column '" + std::string(cells[i]) + "'", line_no);
        }
      }
      columns = cells.size();
      header_seen = true;
      continue;
    }
    if (cells.size() != columns) {
      throw InputError("expected " + std::to_string(columns) + " columns, found " + std::to_string(cells.size()),
                       line_no);
    }
    V3wPoint p;
    p.frequency = cell(cells[0], "freq_hz", line_no);
    p.amplitude_rms = cell(cells[1], "v3w_vrms", line_no);
    std::size_t c = 2;
    if (has_phase) p.phase_deg = cell(cells[c++], "phase_deg", line_no);
    if (has_sigma) p.sigma = cell(cells[c++], "sigma_vrms", line_no);
    if (!(p.frequency > 0.0)) throw InputError("frequency must be positive", line_no);
    if (!(p.amplitude_rms > 0.0)) throw InputError("amplitude must be positive", line_no);
    if (p.sigma && !(*p.sigma > 0.0)) throw InputError("sigma must be positive", line_no);
    rows.push_back({p, line_no});
  }
  if (!header_seen) throw InputError("missing header row", line_no);

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.point.frequency < b.point.frequency; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].point.frequency == rows[i - 1].point.frequency) {
      const std::size_t later = std::max(rows[i].line, rows[i - 1].line);
      const std::size_t earlier = std::min(rows[i].line, rows[i - 1].line);
      throw InputError("duplicate frequency " + format_double(rows[i].point.frequency) + " Hz (first seen on line " +
                           std::to_string(earlier) + ")",
                       later);
    }
  }
  data.points.reserve(rows.size());
  for (auto& r : rows) data.points.push_back(r.point);
  return data;
}

SweepDataset ingest_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_sweep_csv(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string emit_sweep_csv(const SweepDataset& data) {
  std::string out;
  for (const auto& [key, value] : data.metadata) {
    out += "# " + key + " = " + value + "\n";
  }
  for (const auto& k : kRequiredKeys) {
    out += std::string("# ") + k.name + " = " + format_double(data.known.*(k.field)) + "\n";
  }
  for (const auto& k : kOptionalKeys) {
    if (const auto& v = data.known.*(k.field)) out += std::string("# ") + k.name + " = " + format_double(*v) + "\n";
  }
  const bool phase = !data.points.empty() && std::all_of(data.points.begin(), data.points.end(),
                                                         [](const V3wPoint& p) { return p.phase_deg.has_value(); });
  const bool sigma = !data.points.empty() && std::all_of(data.points.begin(), data.points.end(),
                                                         [](const V3wPoint& p) { return p.sigma.has_value(); });
  out += "freq_hz,v3w_vrms";
  if (phase) out += ",phase_deg";
  if (sigma) out += ",sigma_vrms";
  out += '\n';
  for (const auto& p : data.points) {
    out += format_double(p.frequency);
    out += ',';
    out += format_double(p.amplitude_rms);
    if (phase) {
      out += ',';
      out += format_double(*p.phase_deg);
    }
    if (sigma) {
      out += ',';
      out += format_double(*p.sigma);
    }
    out += '\n';
  }
  return out;
}

std::string emit_trace_csv(const fdm::TraceResult& t) {
  std::string out = "time_s,voltage_v,dR_ohm,center_temp_k\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    out += format_double(t.times[i]) + ',' + format_double(t.voltage[i]) + ',' +
           format_double(t.resistance_change[i]) + ',' + format_double(t.center_temperature[i]) + '\n';
  }
  return out;
}

std::string emit_error_curves_csv(std::span<const ErrorCurveRow> rows) {
  std::string out = "two_omega_gamma,exact,first_term,difference,relative\n";
  for (const auto& r : rows) {
    out += format_double(r.x) + ',' + format_double(r.exact) + ',' + format_double(r.first_term) + ',' +
           format_double(r.difference) + ',' + format_double(r.relative) + '\n';
  }
  return out;
}

std::string emit_plot_csv(std::span<const PlotRow> rows, std::string_view x_label, std::string_view y_label) {
  std::string out = "# x = " + std::string(x_label) + ", y = " + std::string(y_label) + "\n";
  out += "x,y_data,y_fit\n";
  for (const auto& r : rows) {
    out += format_double(r.x) + ',' + format_double(r.y_data) + ',' + format_double(r.y_fit) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace three_omega

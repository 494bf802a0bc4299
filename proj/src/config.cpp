#include "three_omega/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "three_omega/errors.hpp"
#include "three_omega/units.hpp"

namespace three_omega {

namespace pt = boost::property_tree;
using units::Quantity;

const char* to_string(Engine e) {
  return e == Engine::spectral ? "spectral" : "oracle";
}

Engine parse_engine(std::string_view text) {
  if (text == "spectral") return Engine::spectral;
  if (text == "oracle" || text == "fdm") return Engine::oracle;
  throw ConfigError("unknown engine '" + std::string(text) + "' (spectral | oracle)");
}

LossModel parse_loss_model(std::string_view text) {
  if (text == "none") return LossModel::none;
  if (text == "radiation") return LossModel::radiation;
  if (text == "convection") return LossModel::convection;
  if (text == "both") return LossModel::both;
  throw ConfigError("unknown loss model '" + std::string(text) + "' (none | radiation | convection | both)");
}

void NoiseSpec::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw ConfigError("noise amplitude must be >= 0");
  if (!(phase >= 0.0) || !std::isfinite(phase)) throw ConfigError("noise phase must be >= 0");
}

std::vector<double> plan_frequencies(const FrequencyPlan& plan, const Specimen& specimen) {
  std::vector<double> f;
  switch (plan.kind) {
    case FrequencyPlan::Kind::list:
      f = plan.list_hz;
      break;
    case FrequencyPlan::Kind::range: {
      if (!(plan.min_hz > 0.0) || !(plan.max_hz > plan.min_hz)) {
        throw ConfigError("frequency range needs 0 < freq_min < freq_max");
      }
      if (plan.points < 2) throw ConfigError("frequency range needs points >= 2");
      f.resize(static_cast<std::size_t>(plan.points));
      for (int i = 0; i < plan.points; ++i) {
        const double u = static_cast<double>(i) / (plan.points - 1);
        f[static_cast<std::size_t>(i)] =
            plan.log_spacing ? plan.min_hz * std::pow(plan.max_hz / plan.min_hz, u)
                             : plan.min_hz + u * (plan.max_hz - plan.min_hz);
      }
      break;
    }
    case FrequencyPlan::Kind::reduced: {
      if (!(plan.reduced_max > 0.0)) throw ConfigError("reduced_max must be > 0");
      if (plan.points < 1) throw ConfigError("points must be >= 1");
      const double gamma = time_constant(specimen);
      f.resize(static_cast<std::size_t>(plan.points));
      for (int i = 1; i <= plan.points; ++i) {
        const double x = plan.reduced_max * i / plan.points;
        f[static_cast<std::size_t>(i - 1)] = x / (2.0 * gamma) / (2.0 * kPi);
      }
      break;
    }
  }
  if (f.empty()) throw ConfigError("no frequencies");
  for (double v : f) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("frequencies must be positive");
  }
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ConfigError("duplicate frequency in plan");
  return f;
}

namespace {

struct Section {
  const char* name;
  std::vector<const char*> keys;
};

const std::vector<Section>& schema() {
  static const std::vector<Section> s = {
      {"specimen",
       {"length", "area", "diameter", "density", "specific_heat", "conductivity", "resistance",
        "resistance_slope", "substrate_temperature", "emissivity", "surface_conductance"}},
      {"drive", {"current", "frequencies", "freq_min", "freq_max", "spacing", "points", "reduced_max"}},
      {"simulation",
       {"engine", "n_max", "include_c_term", "loss", "nx", "steps_per_period", "samples_per_period",
        "n_periods", "settle_periods", "periodicity_tol"}},
      {"fit",
       {"model", "window", "max_window_rounds", "max_iterations", "condition_10_warn", "condition_10_fail",
        "condition_31_warn", "condition_31_fail"}},
      {"noise", {"amplitude", "phase"}},
      {"io", {"output_dir", "input", "seed"}},
      {"pipeline", {"temperatures", "material", "target_dc_rise"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const char* section, const char* key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return *v;
  }

  template <typename Fn>
  auto with(const char* section, const char* key, Fn&& fn) const -> std::optional<decltype(fn(""))> {
    const auto v = raw(section, key);
    if (!v) return std::nullopt;
    try {
      return fn(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("[") + section + "] " + key + ": " + e.what());
    }
  }

  std::optional<double> quantity(const char* section, const char* key, Quantity q) const {
    return with(section, key, [q](const std::string& s) { return units::parse(s, q); });
  }

  std::optional<int> integer(const char* section, const char* key) const {
    return with(section, key, [](const std::string& s) {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("expected an integer, got '" + s + "'");
      return value;
    });
  }

  std::optional<bool> boolean(const char* section, const char* key) const {
    return with(section, key, [](const std::string& s) {
      if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
      if (s == "false" || s == "no" || s == "off" || s == "0") return false;
      throw ConfigError("expected true or false, got '" + s + "'");
    });
  }

 private:
  const pt::ptree& tree_;
};

void check_known(const pt::ptree& tree) {
  for (const auto& [name, section] : tree) {
    const auto& sch = schema();
    const auto it = std::find_if(sch.begin(), sch.end(), [&](const Section& s) { return name == s.name; });
    if (it == sch.end()) {
      if (section.empty()) throw ConfigError("key '" + name + "' outside any section");
      throw ConfigError("unknown section [" + name + "]");
    }
    for (const auto& [key, value] : section) {
      (void)value;
      if (std::none_of(it->keys.begin(), it->keys.end(), [&](const char* k) { return key == k; })) {
        throw ConfigError("unknown key '" + key + "' in [" + name + "]");
      }
    }
  }
}

void set(double& target, std::optional<double> v) {
  if (v) target = *v;
}
void set(int& target, std::optional<int> v) {
  if (v) target = *v;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  check_known(tree);
  const Reader r(tree);
  RunConfig c;

  auto& s = c.specimen;
  set(s.length, r.quantity("specimen", "length", Quantity::length));
  s.diameter = r.quantity("specimen", "diameter", Quantity::length);
  if (auto a = r.quantity("specimen", "area", Quantity::area)) {
    s.area = *a;
  } else if (s.diameter) {
    s.area = kPi * *s.diameter * *s.diameter / 4.0;
  }
  set(s.density, r.quantity("specimen", "density", Quantity::density));
  set(s.specific_heat, r.quantity("specimen", "specific_heat", Quantity::specific_heat));
  set(s.conductivity, r.quantity("specimen", "conductivity", Quantity::conductivity));
  set(s.resistance, r.quantity("specimen", "resistance", Quantity::resistance));
  set(s.resistance_slope, r.quantity("specimen", "resistance_slope", Quantity::resistance_slope));
  set(s.substrate_temperature, r.quantity("specimen", "substrate_temperature", Quantity::temperature));
  s.emissivity = r.quantity("specimen", "emissivity", Quantity::dimensionless);
  s.surface_conductance = r.quantity("specimen", "surface_conductance", Quantity::surface_conductance);

  set(c.current_rms, r.quantity("drive", "current", Quantity::current));
  auto& plan = c.frequencies;
  const auto list = r.with("drive", "frequencies",
                           [](const std::string& v) { return units::parse_list(v, Quantity::frequency); });
  const auto fmin = r.quantity("drive", "freq_min", Quantity::frequency);
  const auto fmax = r.quantity("drive", "freq_max", Quantity::frequency);
  const auto reduced = r.quantity("drive", "reduced_max", Quantity::dimensionless);
  const int kinds = (list ? 1 : 0) + ((fmin || fmax) ? 1 : 0) + (reduced ? 1 : 0);
  if (kinds > 1) throw ConfigError("[drive] give one of frequencies, freq_min/freq_max, reduced_max");
  if (list) {
    plan.kind = FrequencyPlan::Kind::list;
    plan.list_hz = *list;
  } else if (fmin || fmax) {
    if (!fmin || !fmax) throw ConfigError("[drive] freq_min and freq_max go together");
    plan.kind = FrequencyPlan::Kind::range;
    plan.min_hz = *fmin;
    plan.max_hz = *fmax;
  } else {
    plan.kind = FrequencyPlan::Kind::reduced;
    if (reduced) plan.reduced_max = *reduced;
  }
  set(plan.points, r.integer("drive", "points"));
  if (auto sp = r.raw("drive", "spacing")) {
    if (*sp == "log") {
      plan.log_spacing = true;
    } else if (*sp == "linear") {
      plan.log_spacing = false;
    } else {
      throw ConfigError("[drive] spacing: expected log or linear, got '" + *sp + "'");
    }
  }

  if (auto e = r.raw("simulation", "engine")) c.engine = parse_engine(*e);
  set(c.n_max, r.integer("simulation", "n_max"));
  if (auto b = r.boolean("simulation", "include_c_term")) c.include_feedback = *b;
  if (auto l = r.raw("simulation", "loss")) c.loss = parse_loss_model(*l);
  set(c.grid.nx, r.integer("simulation", "nx"));
  set(c.grid.steps_per_period, r.integer("simulation", "steps_per_period"));
  set(c.grid.samples_per_period, r.integer("simulation", "samples_per_period"));
  set(c.grid.n_periods, r.integer("simulation", "n_periods"));
  set(c.grid.settle_periods, r.integer("simulation", "settle_periods"));
  set(c.grid.periodicity_tol, r.quantity("simulation", "periodicity_tol", Quantity::dimensionless));
  if (c.n_max < 1) throw ConfigError("[simulation] n_max must be >= 1");

  if (auto m = r.raw("fit", "model")) {
    try {
      c.fit.model = parse_fit_model(*m);
    } catch (const Error& e) {
      throw ConfigError(std::string("[fit] model: ") + e.what());
    }
  }
  set(c.fit.window_max, r.quantity("fit", "window", Quantity::dimensionless));
  set(c.fit.max_window_rounds, r.integer("fit", "max_window_rounds"));
  set(c.fit.max_iterations, r.integer("fit", "max_iterations"));
  set(c.fit.condition_10_thresholds.warn, r.quantity("fit", "condition_10_warn", Quantity::dimensionless));
  set(c.fit.condition_10_thresholds.fail, r.quantity("fit", "condition_10_fail", Quantity::dimensionless));
  set(c.fit.condition_31_thresholds.warn, r.quantity("fit", "condition_31_warn", Quantity::dimensionless));
  set(c.fit.condition_31_thresholds.fail, r.quantity("fit", "condition_31_fail", Quantity::dimensionless));
  if (!(c.fit.window_max > 0.0)) throw ConfigError("[fit] window must be > 0");

  set(c.noise.amplitude, r.quantity("noise", "amplitude", Quantity::dimensionless));
  set(c.noise.phase, r.quantity("noise", "phase", Quantity::angle));
  if (auto seed = r.with("io", "seed", [](const std::string& v) {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
        if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("expected an unsigned integer");
        return value;
      })) {
    c.noise.seed = *seed;
  }
  c.noise.validate();

  if (auto o = r.raw("io", "output_dir")) c.output_dir = *o;
  c.input = r.raw("io", "input");

  if (auto t = r.with("pipeline", "temperatures",
                      [](const std::string& v) { return units::parse_list(v, Quantity::temperature); })) {
    c.pipeline.temperatures = *t;
  }
  if (auto m = r.raw("pipeline", "material")) c.pipeline.material = *m;
  set(c.pipeline.target_dc_rise, r.quantity("pipeline", "target_dc_rise", Quantity::temperature));
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string emit_config(const RunConfig& c) {
  using units::format;
  std::string out;
  auto line = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  const auto& s = c.specimen;
  out += "[specimen]\n";
  line("length", format(s.length, Quantity::length));
  line("area", format(s.area, Quantity::area));
  if (s.diameter) line("diameter", format(*s.diameter, Quantity::length));
  line("density", format(s.density, Quantity::density));
  line("specific_heat", format(s.specific_heat, Quantity::specific_heat));
  line("conductivity", format(s.conductivity, Quantity::conductivity));
  line("resistance", format(s.resistance, Quantity::resistance));
  line("resistance_slope", format(s.resistance_slope, Quantity::resistance_slope));
  line("substrate_temperature", format(s.substrate_temperature, Quantity::temperature));
  if (s.emissivity) line("emissivity", format(*s.emissivity, Quantity::dimensionless));
  if (s.surface_conductance) line("surface_conductance", format(*s.surface_conductance, Quantity::surface_conductance));

  const auto& p = c.frequencies;
  out += "\n[drive]\n";
  line("current", format(c.current_rms, Quantity::current));
  switch (p.kind) {
    case FrequencyPlan::Kind::list:
      line("frequencies", units::format_list(p.list_hz, Quantity::frequency));
      break;
    case FrequencyPlan::Kind::range:
      line("freq_min", format(p.min_hz, Quantity::frequency));
      line("freq_max", format(p.max_hz, Quantity::frequency));
      break;
    case FrequencyPlan::Kind::reduced:
      line("reduced_max", format(p.reduced_max, Quantity::dimensionless));
      break;
  }
  line("spacing", p.log_spacing ? "log" : "linear");
  line("points", std::to_string(p.points));

  out += "\n[simulation]\n";
  line("engine", to_string(c.engine));
  line("n_max", std::to_string(c.n_max));
  line("include_c_term", c.include_feedback ? "true" : "false");
  line("loss", to_string(c.loss));
  line("nx", std::to_string(c.grid.nx));
  line("steps_per_period", std::to_string(c.grid.steps_per_period));
  line("samples_per_period", std::to_string(c.grid.samples_per_period));
  line("n_periods", std::to_string(c.grid.n_periods));
  line("settle_periods", std::to_string(c.grid.settle_periods));
  line("periodicity_tol", format(c.grid.periodicity_tol, Quantity::dimensionless));

  out += "\n[fit]\n";
  line("model", to_string(c.fit.model));
  line("window", format(c.fit.window_max, Quantity::dimensionless));
  line("max_window_rounds", std::to_string(c.fit.max_window_rounds));
  line("max_iterations", std::to_string(c.fit.max_iterations));
  line("condition_10_warn", format(c.fit.condition_10_thresholds.warn, Quantity::dimensionless));
  line("condition_10_fail", format(c.fit.condition_10_thresholds.fail, Quantity::dimensionless));
  line("condition_31_warn", format(c.fit.condition_31_thresholds.warn, Quantity::dimensionless));
  line("condition_31_fail", format(c.fit.condition_31_thresholds.fail, Quantity::dimensionless));

  out += "\n[noise]\n";
  line("amplitude", format(c.noise.amplitude, Quantity::dimensionless));
  line("phase", format(c.noise.phase, Quantity::angle));

  out += "\n[io]\n";
  line("output_dir", c.output_dir);
  if (c.input) line("input", *c.input);
  line("seed", std::to_string(c.noise.seed));

  out += "\n[pipeline]\n";
  if (!c.pipeline.temperatures.empty()) {
    line("temperatures", units::format_list(c.pipeline.temperatures, Quantity::temperature));
  }
  line("material", c.pipeline.material);
  line("target_dc_rise", format(c.pipeline.target_dc_rise, Quantity::temperature));
  return out;
}

std::string resolve_output_dir(const RunConfig& config) {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return config.output_dir;
}

}  // namespace three_omega

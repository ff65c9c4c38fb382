#include "seek/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "seek/error.hpp"

namespace seek {
namespace {

// Built-in presets; the light field is a synthetic stand-in.
constexpr std::string_view kTable1 = R"(# Simulation parameters, quartic objective, no washout filter.
scenario.name = table1
field.kind = quartic
field.C1 = 1
field.C2 = 1
field.xd = 1
field.yd = -2
esc.design = third_order
esc.a = 0.5
esc.c = 0.5
esc.epsilon = 0.001
esc.omega = 1.4
esc.hpf_gain = 0
esc.theta0 = 0
dither.kappa = 1
init.x0 = 1.6
init.y0 = -1.4
init.h0 = 0
sensor.noise_std = 0
sensor.quantum = 0
sensor.hold_period = 0
sensor.seed = 1
sim.t_end = 100
sim.record_every = 2000
analysis.radius = 0.05
analysis.fit_t0 = 0
analysis.fit_t1 = 20
analysis.tail = 20
sweep.epsilons = 0.01, 0.004, 0.001
sweep.horizon = 5
)";

constexpr std::string_view kTable2 = R"(# Experimental parameters (both designs), quartic objective, washout on.
# sim-replay of experimental parameters
scenario.name = table2
field.kind = quartic
field.C1 = 1
field.C2 = 1
field.xd = 1
field.yd = -2
esc.design = third_order
esc.a = 0.01121
esc.c = 10
esc.epsilon = 0.2992
esc.omega = 1.4
esc.hpf_gain = 1
esc.theta0 = 0
dither.kappa = 1
init.x0 = 1.6
init.y0 = -1.4
init.h0 = settled
sensor.noise_std = 0
sensor.quantum = 0
sensor.hold_period = 0
sensor.seed = 1
sim.t_end = 1200
sim.record_every = 10
analysis.radius = 0.05
analysis.fit_t0 = 0
analysis.fit_t1 = 600
analysis.tail = 20
sweep.epsilons = 0.2992, 0.1496, 0.0748
sweep.horizon = 20
)";

constexpr std::string_view kTable3 = R"(# Light source seeking gains on a synthetic light bowl.
# sim-replay of experimental parameters
scenario.name = table3
field.kind = light
field.L0 = 15000
field.A = 15000
field.sigma = 1
field.xd = 0.8035
field.yd = -2.202
esc.design = third_order
esc.a = 0.006665
esc.c = 0.001
esc.epsilon = 0.1496
esc.omega = 1.4
esc.hpf_gain = 6
esc.theta0 = 0
dither.kappa = 1
init.x0 = 1.3
init.y0 = -1.7
init.h0 = settled
sensor.noise_std = 0
sensor.quantum = 0
sensor.hold_period = 0
sensor.seed = 1
sim.t_end = 600
sim.record_every = 20
analysis.radius = 0.1
analysis.fit_t0 = 0
analysis.fit_t1 = 300
analysis.tail = 20
sweep.epsilons = 0.1496, 0.0748, 0.0374
sweep.horizon = 20
)";

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "scenario.name",  "scenario.base",    "output.dir",      "field.kind",      "field.C1",
      "field.C2",       "field.xd",         "field.yd",        "field.L0",        "field.A",
      "field.sigma",    "sensor.noise_std", "sensor.quantum",  "sensor.hold_period",
      "sensor.seed",    "dither.order",     "dither.kappa",    "esc.a",           "esc.c",
      "esc.epsilon",    "esc.omega",        "esc.hpf_gain",    "esc.theta0",      "esc.design",
      "init.x0",        "init.y0",          "init.h0",         "sim.dt",          "sim.t_end",
      "sim.record_every", "analysis.radius", "analysis.fit_t0", "analysis.fit_t1", "analysis.tail",
      "sweep.epsilons", "sweep.horizon",
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ValidationError(key, "expected a finite number, got '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string str(const std::string& key, const std::string& fallback = {}) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }

  double num(const std::string& key, double fallback) const {
    return has(key) ? parse_double(key, kv_.at(key)) : fallback;
  }

  double num(const std::string& key) const {
    if (!has(key)) throw ValidationError(key, "missing required key");
    return parse_double(key, kv_.at(key));
  }

  long long integer(const std::string& key, long long fallback) const {
    return has(key) ? parse_integer(key, kv_.at(key)) : fallback;
  }

 private:
  const KeyValues& kv_;
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

double ScenarioConfig::esc_dt() const { return dt_override.value_or(default_esc_dt(params.epsilon)); }

IntegratorConfig ScenarioConfig::esc_integrator() const { return {esc_dt(), t_end, record_every}; }

IntegratorConfig ScenarioConfig::lbs_integrator() const {
  const double dt = default_lbs_dt(params.omega);
  const double spacing = esc_dt() * record_every;
  const int every = std::max(1, static_cast<int>(std::lround(spacing / dt)));
  return {dt, t_end, every};
}

Point ScenarioConfig::target() const { return minimizer(field); }

std::vector<std::string> preset_names() { return {"table1", "table2", "table3"}; }

std::string_view preset_text(std::string_view name) {
  if (name == "table1") return kTable1;
  if (name == "table2") return kTable2;
  if (name == "table3") return kTable3;
  throw ValidationError("scenario.base", "unknown preset '" + std::string(name) + "'");
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + body + "'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (value.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": key '" + key + "' has no value");
    }
    if (!kv.emplace(key, value).second) {
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

ScenarioConfig build_config(const KeyValues& overrides) {
  for (const auto& [key, value] : overrides) {
    if (!known_keys().contains(key)) throw ValidationError(key, "unknown key");
  }
  const auto base_it = overrides.find("scenario.base");
  const std::string base = base_it == overrides.end() ? "table1" : base_it->second;
  KeyValues kv = parse_key_values(preset_text(base));
  for (const auto& [key, value] : overrides) kv[key] = value;
  const Reader r(kv);

  ScenarioConfig cfg;
  cfg.base = base;
  cfg.sim_replay = base == "table2" || base == "table3";
  cfg.name = r.str("scenario.name", base);

  const std::string kind = r.str("field.kind", "quartic");
  if (kind == "quartic") {
    cfg.field = QuarticField{r.num("field.C1"), r.num("field.C2"), r.num("field.xd"), r.num("field.yd")};
  } else if (kind == "quadratic") {
    cfg.field = QuadraticField{r.num("field.C1"), r.num("field.C2"), r.num("field.xd"), r.num("field.yd")};
  } else if (kind == "light") {
    cfg.field = LightBowlField{r.num("field.L0", 1.0), r.num("field.A", 1.0), r.num("field.xd"),
                               r.num("field.yd"), r.num("field.sigma", 1.0)};
  } else {
    throw ValidationError("field.kind", "expected quartic, quadratic or light, got '" + kind + "'");
  }
  validate(cfg.field);

  const long long seed = r.integer("sensor.seed", 1);
  if (seed < 0) throw ValidationError("sensor.seed", "must be >= 0");
  cfg.sensor = {r.num("sensor.noise_std", 0.0), r.num("sensor.quantum", 0.0),
                r.num("sensor.hold_period", 0.0), static_cast<std::uint64_t>(seed)};
  validate(cfg.sensor);

  cfg.design = design_from_string(r.str("esc.design", "third_order"));
  if (r.has("dither.order")) {
    const auto order = dither_order_from_string(r.str("dither.order"));
    if (order == DitherOrder::C2) {
      throw ValidationError("dither.order", "c2 has no closed-loop controller; use c1 or c3");
    }
    if (order != dither_order(cfg.design)) {
      throw ValidationError("dither.order", "order " + std::string(to_string(order)) +
                                                " does not match esc.design " +
                                                std::string(to_string(cfg.design)));
    }
  }

  const long long kappa = r.integer("dither.kappa", 1);
  if (kappa < 1 || kappa > 1000) throw ValidationError("dither.kappa", "must be in [1, 1000]");
  cfg.params.a = r.num("esc.a");
  cfg.params.c = r.num("esc.c");
  cfg.params.epsilon = r.num("esc.epsilon");
  cfg.params.omega = r.num("esc.omega");
  cfg.params.hpf_gain = r.num("esc.hpf_gain", 0.0);
  cfg.params.theta0 = r.num("esc.theta0", 0.0);
  cfg.params.kappa = static_cast<int>(kappa);
  validate(cfg.params);

  cfg.start = {r.num("init.x0"), r.num("init.y0")};
  const std::string h0 = r.str("init.h0", "0");
  if (h0 == "settled") {
    // Washout starts at steady state for the reading at the start point.
    cfg.h0 = cfg.params.hpf_gain > 0.0 ? eval(cfg.field, cfg.start.x, cfg.start.y) / cfg.params.hpf_gain
                                       : 0.0;
  } else {
    cfg.h0 = parse_double("init.h0", h0);
  }

  if (r.has("sim.dt")) {
    const double dt = r.num("sim.dt");
    if (!(dt > 0.0)) throw ValidationError("sim.dt", "must be > 0");
    if (dt > default_esc_dt(cfg.params.epsilon) * (1.0 + 1e-12)) {
      throw ValidationError("sim.dt", "must be <= esc.epsilon / 200 = " +
                                          format_double(default_esc_dt(cfg.params.epsilon)));
    }
    cfg.dt_override = dt;
  }
  cfg.t_end = r.num("sim.t_end");
  const long long every = r.integer("sim.record_every", 1);
  if (every < 1) throw ValidationError("sim.record_every", "must be >= 1");
  cfg.record_every = static_cast<int>(every);
  if (!(cfg.t_end >= cfg.esc_dt())) throw ValidationError("sim.t_end", "must be >= the step size");

  cfg.output_dir = r.str("output.dir");

  cfg.radius = r.num("analysis.radius", 0.05);
  if (!(cfg.radius > 0.0)) throw ValidationError("analysis.radius", "must be > 0");
  cfg.fit_t0 = r.num("analysis.fit_t0", 0.0);
  cfg.fit_t1 = r.num("analysis.fit_t1", 20.0);
  if (!(cfg.fit_t0 >= 0.0) || !(cfg.fit_t1 > cfg.fit_t0)) {
    throw ValidationError("analysis.fit_t1", "fit window must satisfy 0 <= fit_t0 < fit_t1");
  }
  cfg.tail = r.num("analysis.tail", 20.0);
  if (!(cfg.tail > 0.0)) throw ValidationError("analysis.tail", "must be > 0");

  cfg.sweep_epsilons.clear();
  std::istringstream eps_list(r.str("sweep.epsilons", "0.01, 0.004, 0.001"));
  std::string item;
  while (std::getline(eps_list, item, ',')) {
    const double e = parse_double("sweep.epsilons", trim(item));
    if (!(e > 0.0)) throw ValidationError("sweep.epsilons", "entries must be > 0");
    cfg.sweep_epsilons.push_back(e);
  }
  if (cfg.sweep_epsilons.empty()) throw ValidationError("sweep.epsilons", "empty list");
  cfg.sweep_horizon = r.num("sweep.horizon", 5.0);
  if (!(cfg.sweep_horizon > 0.0)) throw ValidationError("sweep.horizon", "must be > 0");
  return cfg;
}

ScenarioConfig load_preset(std::string_view name) {
  return build_config({{"scenario.base", std::string(name)}});
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return build_config(parse_key_values(buf.str()));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string to_text(const ScenarioConfig& cfg) {
  std::ostringstream os;
  auto put = [&](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto num = [&](std::string_view k, double v) { put(k, format_double(v)); };
  put("scenario.name", cfg.name);
  put("scenario.base", cfg.base);
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, LightBowlField>) {
          put("field.kind", "light");
          num("field.L0", f.baseline);
          num("field.A", f.depth);
          num("field.sigma", f.width);
          num("field.xd", f.x_source);
          num("field.yd", f.y_source);
        } else {
          put("field.kind", std::is_same_v<F, QuarticField> ? "quartic" : "quadratic");
          num("field.C1", f.c1_coeff);
          num("field.C2", f.c2_coeff);
          num("field.xd", f.x_target);
          num("field.yd", f.y_target);
        }
      },
      cfg.field);
  put("esc.design", std::string(to_string(cfg.design)));
  num("esc.a", cfg.params.a);
  num("esc.c", cfg.params.c);
  num("esc.epsilon", cfg.params.epsilon);
  num("esc.omega", cfg.params.omega);
  num("esc.hpf_gain", cfg.params.hpf_gain);
  num("esc.theta0", cfg.params.theta0);
  put("dither.kappa", std::to_string(cfg.params.kappa));
  num("init.x0", cfg.start.x);
  num("init.y0", cfg.start.y);
  num("init.h0", cfg.h0);
  num("sensor.noise_std", cfg.sensor.noise_std);
  num("sensor.quantum", cfg.sensor.quantum);
  num("sensor.hold_period", cfg.sensor.hold_period);
  put("sensor.seed", std::to_string(cfg.sensor.rng_seed));
  if (cfg.dt_override) num("sim.dt", *cfg.dt_override);
  num("sim.t_end", cfg.t_end);
  put("sim.record_every", std::to_string(cfg.record_every));
  if (!cfg.output_dir.empty()) put("output.dir", cfg.output_dir);
  num("analysis.radius", cfg.radius);
  num("analysis.fit_t0", cfg.fit_t0);
  num("analysis.fit_t1", cfg.fit_t1);
  num("analysis.tail", cfg.tail);
  std::string eps;
  for (std::size_t i = 0; i < cfg.sweep_epsilons.size(); ++i) {
    if (i) eps += ", ";
    eps += format_double(cfg.sweep_epsilons[i]);
  }
  put("sweep.epsilons", eps);
  num("sweep.horizon", cfg.sweep_horizon);
  return os.str();
}

}  // namespace seek

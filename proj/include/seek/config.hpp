#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seek/dynamics.hpp"
#include "seek/field.hpp"
#include "seek/sim.hpp"

namespace seek {

/// Raw dotted-key settings, e.g. {"esc.a": "0.5"}.
using KeyValues = std::map<std::string, std::string>;

/// Everything one scenario needs. Built only through `build_config`, which
/// validates every key before a run starts.
struct ScenarioConfig {
  std::string name;
  std::string base;  ///< preset the values were layered on
  bool sim_replay = false;

  ObjectiveField field;
  MeasurementModel sensor;
  SimParams params;
  Design design = Design::ThirdOrder;

  Point start;
  double h0 = 0.0;

  std::optional<double> dt_override;
  double t_end = 100.0;
  int record_every = 1;

  std::string output_dir;  ///< empty when not set in the config

  double radius = 0.05;    ///< convergence ball [m]
  double fit_t0 = 0.0;
  double fit_t1 = 20.0;
  double tail = 20.0;      ///< averaging window for the final mean position [s]

  std::vector<double> sweep_epsilons;
  double sweep_horizon = 5.0;

  /// ESC step: the override if present, else epsilon / 200.
  double esc_dt() const;
  IntegratorConfig esc_integrator() const;
  /// LBS step: min(1e-3, 2 pi / (200 omega)), with the same horizon and ~same record spacing.
  IntegratorConfig lbs_integrator() const;
  Point target() const;
};

/// Names of the built-in presets.
std::vector<std::string> preset_names();

/// Embedded preset text, in the same `key = value` format config files use.
std::string_view preset_text(std::string_view name);

/// Parse `key = value` lines; `#` starts a comment. Throws ParseError with the
/// line number on malformed lines or duplicate keys.
KeyValues parse_key_values(std::string_view text);

/// Layer `overrides` on the preset named by `scenario.base` (default table1) and
/// validate. Throws ValidationError naming the key on unknown keys or bad values.
ScenarioConfig build_config(const KeyValues& overrides);

ScenarioConfig load_preset(std::string_view name);
ScenarioConfig load_config_file(const std::string& path);

/// Flat `key = value` dump of a config (round-trips through build_config).
std::string to_text(const ScenarioConfig& cfg);

}  // namespace seek

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seek/analysis.hpp"
#include "seek/config.hpp"
#include "seek/sim.hpp"

namespace seek {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,
  kExitNotCertified = 3,
};

struct ScenarioResult {
  Trajectory esc;
  /// Matching LBS on the same time grid, when requested.
  std::optional<Trajectory> lbs;
};

/// Build sensor and plant from the config and integrate the ESC loop.
ScenarioResult run_scenario(const ScenarioConfig& cfg, bool with_lbs = false);

/// Standalone LBS run on its own (coarser) grid.
Trajectory run_lbs(const ScenarioConfig& cfg);

/// Both designs on the same config; runs concurrently when jobs > 1.
std::pair<Trajectory, Trajectory> run_comparison(const ScenarioConfig& cfg, int jobs);

struct GapPoint {
  double epsilon = 0.0;
  double gap = 0.0;
};

/// ESC vs LBS sup-gap for every epsilon in cfg.sweep_epsilons over cfg.sweep_horizon.
/// Result is sorted by epsilon, descending. Deterministic regardless of `jobs`.
std::vector<GapPoint> averaging_gap_sweep(const ScenarioConfig& cfg, int jobs);

/// Third-order LBS gains for a quartic config. Throws ValidationError otherwise.
LbsGains config_lbs_gains(const ScenarioConfig& cfg);

using Report = std::vector<std::pair<std::string, std::string>>;

/// Header `t,x,y,h,J,v`; values in shortest round-trip form.
std::string trajectory_csv(const Trajectory& traj);
std::string report_text(const Report& report);
std::string format_number(double v);

/// Summary of one ESC or LBS run: final error, convergence time, fitted rate, tail mean.
Report summarize(const ScenarioConfig& cfg, const Trajectory& traj, const std::string& prefix = "");

Report certificate_report(const StabilityCertificate& cert);

struct CommandOptions {
  std::filesystem::path out_dir;
  int jobs = 1;
};

/// Resolve the output directory: --out, then output.dir, then $SEEK_OUT, then ./seek_out.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_out,
                                         const ScenarioConfig& cfg);

/// Each command writes its artifacts into opt.out_dir and a short summary to `log`.
/// IoError propagates; callers map it to kExitConfig.
int cmd_simulate(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_compare(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_lbs(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_avggap(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_certify(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log);

/// Full command-line entry point (`seek <command> [options]`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seek

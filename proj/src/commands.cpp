#include "seek/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include "seek/error.hpp"

namespace seek {
namespace {

constexpr const char* kSimReplayLabel = "sim-replay of experimental parameters";

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
  // create_directories succeeds on an existing read-only directory; probe it.
  const auto probe = dir / ".seek_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

/// Run `task(i)` for i in [0, n) on up to `jobs` threads.
template <class Task>
void parallel_for(std::size_t n, int jobs, Task&& task) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : "none"; }

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, bool with_lbs) {
  ScenarioResult result;
  const auto integ = cfg.esc_integrator();
  result.esc = simulate_esc(cfg.design, cfg.params, cfg.field, cfg.sensor, cfg.start, cfg.h0, integ);
  if (with_lbs) {
    result.lbs = simulate_lbs(cfg.design, cfg.field, cfg.params.omega, cfg.params.c, cfg.params.a,
                              cfg.params.theta0, cfg.start, integ);
  }
  return result;
}

Trajectory run_lbs(const ScenarioConfig& cfg) {
  return simulate_lbs(cfg.design, cfg.field, cfg.params.omega, cfg.params.c, cfg.params.a,
                      cfg.params.theta0, cfg.start, cfg.lbs_integrator());
}

std::pair<Trajectory, Trajectory> run_comparison(const ScenarioConfig& cfg, int jobs) {
  std::array<Trajectory, 2> out;
  parallel_for(2, jobs, [&](std::size_t i) {
    ScenarioConfig c = cfg;
    c.design = i == 0 ? Design::ThirdOrder : Design::FirstOrder;
    out[i] = run_scenario(c).esc;
  });
  return {std::move(out[0]), std::move(out[1])};
}

std::vector<GapPoint> averaging_gap_sweep(const ScenarioConfig& cfg, int jobs) {
  std::vector<GapPoint> points(cfg.sweep_epsilons.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    ScenarioConfig c = cfg;
    c.params.epsilon = cfg.sweep_epsilons[i];
    c.dt_override.reset();
    c.t_end = cfg.sweep_horizon;
    c.record_every = 10;
    const auto run = run_scenario(c, true);
    if (run.esc.aborted || run.lbs->aborted) {
      throw NumericalError("averaging-gap run at epsilon = " + format_number(c.params.epsilon) +
                           " aborted: " + (run.esc.aborted ? run.esc.abort_reason : run.lbs->abort_reason));
    }
    points[i] = {c.params.epsilon, averaging_gap(run.esc, *run.lbs)};
  });
  std::sort(points.begin(), points.end(),
            [](const GapPoint& a, const GapPoint& b) { return a.epsilon > b.epsilon; });
  return points;
}

LbsGains config_lbs_gains(const ScenarioConfig& cfg) {
  const auto* quartic = std::get_if<QuarticField>(&cfg.field);
  if (!quartic) {
    throw ValidationError("field.kind", "stability certificate needs the quartic field, got '" +
                                            std::string(kind_name(cfg.field)) + "'");
  }
  return lbs_gains(cfg.params.c, cfg.params.a, quartic->c1_coeff, quartic->c2_coeff);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x,y,h,J,v\n";
  out.reserve(traj.samples.size() * 120 + 16);
  for (const auto& s : traj.samples) {
    out += format_number(s.t);
    for (double v : {s.x, s.y, s.h, s.J, s.v}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string report_text(const Report& report) {
  std::string out;
  for (const auto& [k, v] : report) out += k + " = " + v + "\n";
  return out;
}

Report summarize(const ScenarioConfig& cfg, const Trajectory& traj, const std::string& prefix) {
  Report r;
  auto put = [&](const std::string& k, std::string v) { r.emplace_back(prefix + k, std::move(v)); };
  const Point target = cfg.target();
  put("design", traj.meta.design);
  put("field", traj.meta.field);
  put("samples", std::to_string(traj.samples.size()));
  put("aborted", traj.aborted ? "true" : "false");
  if (traj.aborted) put("abort_reason", traj.abort_reason);
  if (traj.empty()) return r;
  const auto& last = traj.back();
  put("t_final", format_number(last.t));
  put("x_final", format_number(last.x));
  put("y_final", format_number(last.y));
  put("final_error", format_number(distance(last, target)));
  put("convergence_radius", format_number(cfg.radius));
  put("convergence_time", opt_number(convergence_time(traj, target, cfg.radius)));
  const double t1 = std::min(cfg.fit_t1, last.t);
  try {
    const auto fit = fit_decay(traj, target, cfg.fit_t0, t1, 2.0 * std::numbers::pi / cfg.params.omega);
    put("fit_window", format_number(fit.window_start) + "," + format_number(fit.window_end));
    put("fit_rate", format_number(fit.rate));
    put("fit_r_squared", format_number(fit.r_squared));
  } catch (const ValidationError& e) {
    put("fit_rate", "none");
    put("fit_note", e.what());
  }
  const double tail_from = std::max(0.0, last.t - cfg.tail);
  const Point mean = mean_position(traj, tail_from);
  put("tail_mean_x", format_number(mean.x));
  put("tail_mean_y", format_number(mean.y));
  put("tail_mean_error", format_number(std::hypot(mean.x - target.x, mean.y - target.y)));
  return r;
}

Report certificate_report(const StabilityCertificate& cert) {
  Report r;
  r.emplace_back("c1", format_number(cert.c1));
  r.emplace_back("c2", format_number(cert.c2));
  r.emplace_back("omega", format_number(cert.omega));
  r.emplace_back("k11", format_number(cert.k11));
  r.emplace_back("k12", format_number(cert.k12));
  r.emplace_back("k2", format_number(cert.k2));
  r.emplace_back("omega_threshold", opt_number(cert.omega_threshold));
  r.emplace_back("condition_branch", std::string(to_string(cert.condition_branch)));
  r.emplace_back("gamma_feasible", opt_number(cert.gamma_feasible));
  r.emplace_back("gamma_margin", format_number(cert.gamma_margin));
  r.emplace_back("verdict", cert.verdict ? "true" : "false");
  return r;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_out,
                                         const ScenarioConfig& cfg) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("SEEK_OUT"); env && *env) return env;
  return "seek_out";
}

namespace {

Report header(const ScenarioConfig& cfg, const std::string& command) {
  Report r;
  r.emplace_back("command", command);
  r.emplace_back("scenario", cfg.name);
  if (cfg.sim_replay) r.emplace_back("label", kSimReplayLabel);
  return r;
}

void append(Report& into, const Report& from) { into.insert(into.end(), from.begin(), from.end()); }

}  // namespace

int cmd_simulate(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  prepare_dir(opt.out_dir);
  const auto run = run_scenario(cfg);
  write_file(opt.out_dir / "trajectory.csv", trajectory_csv(run.esc));
  Report report = header(cfg, "simulate");
  append(report, summarize(cfg, run.esc));
  write_file(opt.out_dir / "summary.txt", report_text(report));
  write_file(opt.out_dir / "config.txt", to_text(cfg));

  std::string env = "t,envelope_error\n";
  if (!run.esc.empty()) {
    for (const auto& p : error_envelope(run.esc, cfg.target(), 0.0, run.esc.back().t,
                                        2.0 * std::numbers::pi / cfg.params.omega)) {
      env += format_number(p.t) + "," + format_number(p.error) + "\n";
    }
  }
  write_file(opt.out_dir / "envelope.csv", env);
  log << report_text(report);
  return run.esc.aborted ? kExitNumerical : kExitOk;
}

int cmd_compare(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  prepare_dir(opt.out_dir);
  const auto [third, first] = run_comparison(cfg, opt.jobs);
  write_file(opt.out_dir / "third_order.csv", trajectory_csv(third));
  write_file(opt.out_dir / "first_order.csv", trajectory_csv(first));
  Report report = header(cfg, "compare");
  append(report, summarize(cfg, third, "third_order."));
  append(report, summarize(cfg, first, "first_order."));
  write_file(opt.out_dir / "compare.txt", report_text(report));
  write_file(opt.out_dir / "config.txt", to_text(cfg));
  log << report_text(report);
  return third.aborted || first.aborted ? kExitNumerical : kExitOk;
}

int cmd_lbs(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  prepare_dir(opt.out_dir);
  const auto traj = run_lbs(cfg);
  write_file(opt.out_dir / "lbs.csv", trajectory_csv(traj));
  Report report = header(cfg, "lbs");
  append(report, summarize(cfg, traj));
  if (std::holds_alternative<QuarticField>(cfg.field) && cfg.design == Design::ThirdOrder) {
    const auto gains = config_lbs_gains(cfg);
    const auto cert = certify(gains.c1, gains.c2, cfg.params.omega);
    append(report, certificate_report(cert));
    if (cert.gamma_feasible) {
      const auto vd = vdot_sample(traj, cfg.target(), gains.c1, gains.c2, cfg.params.omega,
                                  *cert.gamma_feasible);
      report.emplace_back("max_vdot", format_number(vd.max_vdot));
      report.emplace_back("vdot_samples", std::to_string(vd.samples_used));
      if (vd.warning) report.emplace_back("vdot_warning", *vd.warning);
    }
  }
  std::string env = "t,envelope_error\n";
  if (!traj.empty()) {
    for (const auto& p : error_envelope(traj, cfg.target(), 0.0, traj.back().t,
                                        2.0 * std::numbers::pi / cfg.params.omega)) {
      env += format_number(p.t) + "," + format_number(p.error) + "\n";
    }
  }
  write_file(opt.out_dir / "envelope.csv", env);
  write_file(opt.out_dir / "lbs.txt", report_text(report));
  log << report_text(report);
  return traj.aborted ? kExitNumerical : kExitOk;
}

int cmd_avggap(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  prepare_dir(opt.out_dir);
  const auto points = averaging_gap_sweep(cfg, opt.jobs);
  std::string csv = "epsilon,gap\n";
  for (const auto& p : points) csv += format_number(p.epsilon) + "," + format_number(p.gap) + "\n";
  write_file(opt.out_dir / "avggap.csv", csv);

  bool decreasing = true;
  for (std::size_t i = 1; i < points.size(); ++i) decreasing = decreasing && points[i].gap < points[i - 1].gap;
  Report report = header(cfg, "avggap");
  report.emplace_back("design", std::string(to_string(cfg.design)));
  report.emplace_back("horizon", format_number(cfg.sweep_horizon));
  for (const auto& p : points) report.emplace_back("gap@" + format_number(p.epsilon), format_number(p.gap));
  report.emplace_back("gap_decreases_with_epsilon", decreasing ? "true" : "false");
  write_file(opt.out_dir / "avggap.txt", report_text(report));
  log << report_text(report);
  return kExitOk;
}

int cmd_certify(const ScenarioConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const auto gains = config_lbs_gains(cfg);
  prepare_dir(opt.out_dir);
  const auto cert = certify(gains.c1, gains.c2, cfg.params.omega);
  Report report = header(cfg, "certify");
  append(report, certificate_report(cert));
  write_file(opt.out_dir / "certificate.txt", report_text(report));
  log << report_text(report);
  return cert.verdict ? kExitOk : kExitNotCertified;
}

}  // namespace seek

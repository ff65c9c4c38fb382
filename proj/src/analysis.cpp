#include "seek/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "seek/error.hpp"

namespace seek {
namespace {

constexpr int kGammaCandidates = 1000;
constexpr double kGammaDecades = 6.0;
constexpr double kErrorFloor = 1e-12;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(name, "must be finite and > 0, got " + std::to_string(v));
  }
}

bool in_branch_interval(double own, double other) {
  return own > 3.0 * other / 5.0 && own <= other;
}

}  // namespace

LbsGains lbs_gains(double c, double a, double C1, double C2) {
  require_positive(c, "esc.c");
  require_positive(a, "esc.a");
  require_positive(C1, "field.C1");
  require_positive(C2, "field.C2");
  const double k = 24.0 * c * a * a * a;
  return {k * C1, k * C2};
}

std::string_view to_string(ConditionBranch branch) {
  switch (branch) {
    case ConditionBranch::I: return "i";
    case ConditionBranch::II: return "ii";
    case ConditionBranch::Both: return "both";
    case ConditionBranch::None: return "none";
  }
  return "?";
}

double branch_omega_threshold(double own, double other) {
  const double u = 3.0 * other - own;
  return 2.0 * own * u * (2.0 * other - own) / (16.0 * own * own - u * u);
}

double gamma_quadratic(double k11, double k12, double k2, double omega, double gamma) {
  const double quad = 4.0 * omega * omega + 4.0 * k2 * omega + k12 * k12;
  const double lin = 2.0 * (2.0 * omega * k11 + 2.0 * k11 * k2 - k2 * k12);
  return quad * gamma * gamma - lin * gamma + k2 * k2;
}

StabilityCertificate certify(double c1, double c2, double omega) {
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(omega, "esc.omega");

  StabilityCertificate cert;
  cert.c1 = c1;
  cert.c2 = c2;
  cert.omega = omega;
  cert.k11 = 0.5 * std::min(c1, c2);
  cert.k12 = std::max(c1, c2);
  cert.k2 = 0.25 * std::abs(c1 - c2) + 0.125 * (c1 + c2);

  bool branch_i = false;
  bool branch_ii = false;
  if (in_branch_interval(c1, c2)) {
    const double th = branch_omega_threshold(c1, c2);
    cert.omega_threshold = th;
    branch_i = omega > th;
  }
  if (in_branch_interval(c2, c1)) {
    const double th = branch_omega_threshold(c2, c1);
    cert.omega_threshold = cert.omega_threshold ? std::min(*cert.omega_threshold, th) : th;
    branch_ii = omega > th;
  }
  cert.condition_branch = branch_i && branch_ii ? ConditionBranch::Both
                          : branch_i            ? ConditionBranch::I
                          : branch_ii           ? ConditionBranch::II
                                                : ConditionBranch::None;

  // Log grid strictly inside (0, min{1, k11 / omega}); keep the most negative.
  const double upper = std::min(1.0, cert.k11 / omega);
  double best_gamma = 0.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kGammaCandidates; ++j) {
    const double exponent = -kGammaDecades + kGammaDecades * j / kGammaCandidates;
    const double g = upper * std::pow(10.0, exponent);
    const double q = gamma_quadratic(cert.k11, cert.k12, cert.k2, omega, g);
    if (q < best_value) {
      best_value = q;
      best_gamma = g;
    }
  }
  cert.gamma_margin = best_value;
  if (best_value < 0.0) cert.gamma_feasible = best_gamma;
  cert.verdict = cert.condition_branch != ConditionBranch::None && cert.gamma_feasible.has_value();
  return cert;
}

double lyapunov_value(double xi, double eta, double gamma) {
  return 0.5 * xi * xi + 0.5 * eta * eta + gamma * xi * eta;
}

KappaCoefficients kappa_coefficients(double c1, double c2, double omega, double t) {
  const double co = std::cos(omega * t);
  const double si = std::sin(omega * t);
  const double co2 = co * co;
  const double si2 = si * si;
  return {c1 * co2 * co2 + c2 * si2 * si2, 0.5 * std::sin(2.0 * omega * t) * (c1 * co2 - c2 * si2)};
}

double lyapunov_rate(double xi, double eta, double gamma, double c1, double c2, double omega,
                     double t) {
  const auto k = kappa_coefficients(c1, c2, omega, t);
  return -(k.kappa1 - gamma * omega) * xi * xi - gamma * (omega + k.kappa2) * eta * eta -
         (gamma * k.kappa1 + k.kappa2) * xi * eta;
}

VdotReport vdot_sample(const Trajectory& lbs, Point target, double c1, double c2, double omega,
                       double gamma) {
  VdotReport report;
  report.max_vdot = -std::numeric_limits<double>::infinity();
  for (const auto& s : lbs.samples) {
    const auto r = to_rotating({s.x, s.y}, target, omega, s.t);
    if (r.xi * r.xi + r.eta * r.eta < 1e-12) continue;
    report.max_vdot = std::max(report.max_vdot, lyapunov_rate(r.xi, r.eta, gamma, c1, c2, omega, s.t));
    ++report.samples_used;
  }
  const auto cert = certify(c1, c2, omega);
  const double upper = std::min(1.0, cert.k11 / omega);
  if (!cert.verdict) {
    report.warning = "parameters are not certified (branch " +
                     std::string(to_string(cert.condition_branch)) + ")";
  } else if (!(gamma > 0.0 && gamma < upper) ||
             !(gamma_quadratic(cert.k11, cert.k12, cert.k2, omega, gamma) < 0.0)) {
    report.warning = "gamma = " + std::to_string(gamma) + " does not satisfy the cross-gain inequality";
  }
  return report;
}

double distance(const Sample& s, Point target) { return std::hypot(s.x - target.x, s.y - target.y); }

std::vector<EnvelopePoint> error_envelope(const Trajectory& traj, Point target, double t0, double t1,
                                          double period) {
  require_positive(period, "period");
  const auto bins = static_cast<long long>(std::floor((t1 - t0) / period + 1e-9));
  std::vector<EnvelopePoint> env;
  if (bins <= 0) return env;
  std::vector<bool> filled(static_cast<std::size_t>(bins), false);
  env.assign(static_cast<std::size_t>(bins), EnvelopePoint{});
  const double end = t0 + static_cast<double>(bins) * period;
  for (const auto& s : traj.samples) {
    if (s.t < t0 || s.t > end) continue;
    auto k = static_cast<long long>(std::floor((s.t - t0) / period));
    k = std::min(k, bins - 1);
    const double e = distance(s, target);
    auto& slot = env[static_cast<std::size_t>(k)];
    if (!filled[static_cast<std::size_t>(k)] || e > slot.error) {
      slot = {s.t, e};
      filled[static_cast<std::size_t>(k)] = true;
    }
  }
  std::vector<EnvelopePoint> out;
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (filled[i]) out.push_back(env[i]);
  }
  return out;
}

DecayFit fit_decay(const Trajectory& traj, Point target, double t0, double t1, double period) {
  if (!(t1 > t0)) throw ValidationError("window", "empty fit window");
  const auto in_window = std::count_if(traj.samples.begin(), traj.samples.end(),
                                       [&](const Sample& s) { return s.t >= t0 && s.t <= t1; });
  if (in_window < 20) {
    throw ValidationError("window", "fit window holds " + std::to_string(in_window) +
                                        " samples, need at least 20");
  }
  const auto env = error_envelope(traj, target, t0, t1, period);
  if (env.size() < 2) {
    throw ValidationError("window", "fit window spans fewer than two envelope periods");
  }

  const double n = static_cast<double>(env.size());
  double st = 0.0, sl = 0.0;
  for (const auto& p : env) {
    st += p.t;
    sl += std::log(std::max(p.error, kErrorFloor));
  }
  const double mt = st / n;
  const double ml = sl / n;
  double stt = 0.0, stl = 0.0, sll = 0.0;
  for (const auto& p : env) {
    const double dt = p.t - mt;
    const double dl = std::log(std::max(p.error, kErrorFloor)) - ml;
    stt += dt * dt;
    stl += dt * dl;
    sll += dl * dl;
  }
  if (stt <= 0.0) throw ValidationError("window", "degenerate fit window");
  const double slope = stl / stt;

  DecayFit fit;
  fit.rate = -slope;
  fit.window_start = t0;
  fit.window_end = t1;
  fit.points = env.size();
  // A flat series (up to rounding) is fitted exactly by a flat line.
  const double ss_res = std::max(0.0, sll - slope * stl);
  const double flat = 1e-24 * n * std::max(1.0, ml * ml);
  fit.r_squared = sll <= flat ? 1.0 : std::clamp(1.0 - ss_res / sll, 0.0, 1.0);
  return fit;
}

DecayFit fit_decay(const Trajectory& traj, Point target, double t0, double t1) {
  return fit_decay(traj, target, t0, t1, 2.0 * std::numbers::pi / traj.meta.params.omega);
}

double averaging_gap(const Trajectory& a, const Trajectory& b) {
  if (a.samples.size() != b.samples.size()) {
    throw TimestampMismatchError("trajectories have " + std::to_string(a.samples.size()) + " and " +
                                 std::to_string(b.samples.size()) + " samples");
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& sa = a.samples[i];
    const auto& sb = b.samples[i];
    if (std::abs(sa.t - sb.t) > 1e-9 * std::max(1.0, std::abs(sa.t))) {
      throw TimestampMismatchError("sample " + std::to_string(i) + " at t = " + std::to_string(sa.t) +
                                   " vs t = " + std::to_string(sb.t));
    }
    gap = std::max(gap, std::hypot(sa.x - sb.x, sa.y - sb.y));
  }
  return gap;
}

std::optional<double> convergence_time(const Trajectory& traj, Point target, double radius) {
  require_positive(radius, "analysis.radius");
  std::optional<double> entry;
  for (const auto& s : traj.samples) {
    if (distance(s, target) < radius) {
      if (!entry) entry = s.t;
    } else {
      entry.reset();
    }
  }
  return entry;
}

Point mean_position(const Trajectory& traj, double t_from) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (const auto& s : traj.samples) {
    if (s.t < t_from) continue;
    sx += s.x;
    sy += s.y;
    ++n;
  }
  if (n == 0) throw ValidationError("window", "no samples after t = " + std::to_string(t_from));
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

}  // namespace seek

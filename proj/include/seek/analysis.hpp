#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seek/field.hpp"
#include "seek/sim.hpp"

namespace seek {

struct LbsGains {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// c_i = 4! c a^3 C_i. Throws ValidationError on non-positive input.
LbsGains lbs_gains(double c, double a, double C1, double C2);

enum class ConditionBranch { I, II, Both, None };

std::string_view to_string(ConditionBranch branch);

/// Sufficient conditions for exponential stability of the third-order LBS.
///
/// Branch (i) needs c1 in (3 c2 / 5, c2] and omega above
/// 2 c1 (3 c2 - c1)(2 c2 - c1) / (16 c1^2 - (3 c2 - c1)^2); branch (ii) swaps c1
/// and c2. A verdict additionally needs a cross gain gamma in (0, min{1, k11/omega})
/// that makes the Lyapunov derivative negative definite.
struct StabilityCertificate {
  double c1 = 0.0;
  double c2 = 0.0;
  double omega = 0.0;
  double k11 = 0.0;  ///< lower bound on kappa1(t)
  double k12 = 0.0;  ///< upper bound on kappa1(t)
  double k2 = 0.0;   ///< bound on |kappa2(t)|
  /// Lowest omega admitted by a branch whose gain interval holds; absent if none does.
  std::optional<double> omega_threshold;
  ConditionBranch condition_branch = ConditionBranch::None;
  std::optional<double> gamma_feasible;
  /// Left-hand side of the gamma quadratic at the best candidate (< 0 when feasible).
  double gamma_margin = 0.0;
  bool verdict = false;
};

StabilityCertificate certify(double c1, double c2, double omega);

/// Omega bound of branch (i) with (c1, c2) = (own, other).
double branch_omega_threshold(double own, double other);

/// (4 W^2 + 4 k2 W + k12^2) g^2 - 2 (2 W k11 + 2 k11 k2 - k2 k12) g + k2^2.
double gamma_quadratic(double k11, double k12, double k2, double omega, double gamma);

/// V = xi^2 / 2 + eta^2 / 2 + gamma xi eta.
double lyapunov_value(double xi, double eta, double gamma);

struct KappaCoefficients {
  double kappa1 = 0.0;  ///< c1 cos^4 + c2 sin^4
  double kappa2 = 0.0;  ///< sin(2 W t) (c1 cos^2 - c2 sin^2) / 2
};

KappaCoefficients kappa_coefficients(double c1, double c2, double omega, double t);

/// dV/dt along the rotating-frame LBS: xi' = -kappa1 xi - (W + kappa2) eta, eta' = W xi.
double lyapunov_rate(double xi, double eta, double gamma, double c1, double c2, double omega,
                     double t);

struct VdotReport {
  double max_vdot = 0.0;
  std::size_t samples_used = 0;
  std::optional<std::string> warning;
};

/// Maximum of dV/dt over the samples of an LBS trajectory, skipping samples with
/// xi^2 + eta^2 < 1e-12. Warns (does not throw) when the parameters are not certified.
VdotReport vdot_sample(const Trajectory& lbs, Point target, double c1, double c2, double omega,
                       double gamma);

struct EnvelopePoint {
  double t = 0.0;
  double error = 0.0;
};

/// Per-period maximum of ||(x, y) - target|| over [t0, t1]; one point per full period,
/// timestamped at the sample attaining the maximum.
std::vector<EnvelopePoint> error_envelope(const Trajectory& traj, Point target, double t0, double t1,
                                          double period);

struct DecayFit {
  double rate = 0.0;       ///< minus the slope of ln(error) [1/s]
  double r_squared = 0.0;  ///< in [0, 1]
  double window_start = 0.0;
  double window_end = 0.0;
  std::size_t points = 0;  ///< envelope points used
};

/// Least-squares line through (t, ln envelope error). Errors are floored at 1e-12 m.
/// Throws ValidationError if the window holds fewer than 20 samples or two periods.
DecayFit fit_decay(const Trajectory& traj, Point target, double t0, double t1, double period);

/// Uses the heading period 2 pi / omega from the trajectory metadata.
DecayFit fit_decay(const Trajectory& traj, Point target, double t0, double t1);

/// sup_k ||X_a(t_k) - X_b(t_k)||. Throws TimestampMismatchError unless both
/// trajectories carry the same timestamps.
double averaging_gap(const Trajectory& a, const Trajectory& b);

/// Earliest recorded t after which every sample stays strictly inside the ball.
std::optional<double> convergence_time(const Trajectory& traj, Point target, double radius);

double distance(const Sample& s, Point target);

/// Mean position over samples with t >= t_from.
Point mean_position(const Trajectory& traj, double t_from);

}  // namespace seek

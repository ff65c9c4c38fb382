#pragma once

#include <array>
#include <concepts>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seek/dynamics.hpp"
#include "seek/error.hpp"
#include "seek/field.hpp"

namespace seek {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 1;
};

void validate(const IntegratorConfig& cfg);

/// One recorded sample. For LBS runs h is 0 and v is the signed speed along the heading.
struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  double J = 0.0;
  double v = 0.0;
};

struct TrajectoryMeta {
  std::string design;  ///< third_order, first_order, lbs3 or lbs1
  std::string field;   ///< field kind
  SimParams params;
  std::uint64_t seed = 0;
  double dt = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  TrajectoryMeta meta;
  bool aborted = false;
  std::string abort_reason;

  const Sample& back() const { return samples.back(); }
  bool empty() const noexcept { return samples.empty(); }
};

struct NoHook {
  void operator()() const noexcept {}
};

/// Classical RK4. `rhs(state, t)` returns the derivative. Throws NumericalError
/// naming the stage and time if any stage derivative is non-finite.
/// `after_first_stage` runs right after the (y, t) evaluation.
template <std::size_t N, class Rhs, class Hook = NoHook>
StateVec<N> rk4_step(Rhs&& rhs, const StateVec<N>& y, double t, double dt,
                     Hook&& after_first_stage = {}) {
  auto check = [&](const StateVec<N>& k, int stage, double ts) {
    for (double v : k) {
      if (!std::isfinite(v)) {
        throw NumericalError("non-finite derivative at RK4 stage " + std::to_string(stage) +
                             ", t = " + std::to_string(ts));
      }
    }
  };
  const double half = 0.5 * dt;
  StateVec<N> tmp;

  const StateVec<N> k1 = rhs(y, t);
  check(k1, 1, t);
  after_first_stage();
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + half * k1[i];

  const StateVec<N> k2 = rhs(tmp, t + half);
  check(k2, 2, t + half);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + half * k2[i];

  const StateVec<N> k3 = rhs(tmp, t + half);
  check(k3, 3, t + half);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];

  const StateVec<N> k4 = rhs(tmp, t + dt);
  check(k4, 4, t + dt);

  StateVec<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

/// What `integrate` needs from a system:
///   state_type, derivative(state, t), sample(state, t).
/// `sample` may reuse by-products of the most recent derivative call at (state, t);
/// `integrate` always evaluates the derivative at a point before sampling it.
/// An optional `max_step()` bounds dt.
template <class S>
concept IntegrableSystem = requires(S s, const typename S::state_type& y, double t) {
  { s.derivative(y, t) } -> std::same_as<typename S::state_type>;
  { s.sample(y, t) } -> std::same_as<Sample>;
};

namespace detail {
inline long long step_count(const IntegratorConfig& cfg) {
  return static_cast<long long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
}
}  // namespace detail

/// Fixed-step RK4 from t = 0 to t_end. Records sample 0, every
/// record_every-th step, and the final state. A short last step closes any
/// remainder of t_end / dt. A non-finite state stops the run; the samples so far
/// are kept and the trajectory is flagged.
template <IntegrableSystem System>
Trajectory integrate(System& sys, typename System::state_type init, const IntegratorConfig& cfg) {
  validate(cfg);
  if constexpr (requires { sys.max_step(); }) {
    const double limit = sys.max_step();
    if (cfg.dt > limit * (1.0 + 1e-12)) {
      throw StepSizeError("dt = " + std::to_string(cfg.dt) + " exceeds the allowed maximum " +
                          std::to_string(limit));
    }
  }

  Trajectory traj;
  const long long n = detail::step_count(cfg);
  const double remainder = cfg.t_end - static_cast<double>(n) * cfg.dt;
  const bool partial = remainder > 1e-9 * cfg.dt;
  traj.samples.reserve(static_cast<std::size_t>(n / cfg.record_every) + 3);

  auto rhs = [&sys](const typename System::state_type& y, double t) { return sys.derivative(y, t); };
  auto y = init;
  double t = 0.0;
  const long long total = n + (partial ? 1 : 0);
  try {
    for (long long i = 0; i < total; ++i) {
      t = static_cast<double>(i) * cfg.dt;
      const double h = (i < n) ? cfg.dt : remainder;
      const bool record = i % cfg.record_every == 0;
      auto next = rk4_step(rhs, y, t, h, [&] {
        if (record) traj.samples.push_back(sys.sample(y, t));
      });
      for (double v : next) {
        if (!std::isfinite(v)) throw NumericalError("non-finite state at t = " + std::to_string(t + h));
      }
      y = next;
    }
    t = partial ? cfg.t_end : static_cast<double>(n) * cfg.dt;
    sys.derivative(y, t);
    if (traj.samples.empty() || traj.samples.back().t < t) traj.samples.push_back(sys.sample(y, t));
  } catch (const NumericalError& e) {
    traj.aborted = true;
    traj.abort_reason = e.what();
  }
  return traj;
}

/// ESC closed loop as an integrable system over (x, y, h).
class EscSystem {
 public:
  using state_type = StateVec<3>;

  EscSystem(Design design, SimParams params, Sensor sensor);

  state_type derivative(const state_type& y, double t);
  Sample sample(const state_type& y, double t) const;
  double max_step() const noexcept { return params_.epsilon / 200.0; }

  Design design() const noexcept { return design_; }
  const SimParams& params() const noexcept { return params_; }
  const Sensor& sensor() const noexcept { return sensor_; }

 private:
  Design design_;
  SimParams params_;
  Sensor sensor_;
  double last_measured_ = 0.0;
  double last_velocity_ = 0.0;
};

/// Averaged (Lie bracket) system over (xbar, ybar).
class LbsSystem {
 public:
  using state_type = StateVec<2>;

  LbsSystem(Design design, ObjectiveField field, double omega, double c, double a,
            double theta0 = 0.0);

  state_type derivative(const state_type& y, double t);
  Sample sample(const state_type& y, double t) const;

 private:
  Design design_;
  ObjectiveField field_;
  double omega_, c_, a_, theta0_;
  double last_speed_ = 0.0;
};

/// Default ESC step: epsilon / 200.
double default_esc_dt(double epsilon);
/// Default LBS step: min(1e-3, 2 pi / (200 omega)).
double default_lbs_dt(double omega);

Trajectory simulate_esc(Design design, const SimParams& params, const ObjectiveField& field,
                        const MeasurementModel& sensor, Point start, double h0,
                        const IntegratorConfig& cfg);

Trajectory simulate_lbs(Design design, const ObjectiveField& field, double omega, double c,
                        double a, double theta0, Point start, const IntegratorConfig& cfg);

}  // namespace seek

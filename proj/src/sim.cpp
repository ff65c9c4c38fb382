#include "seek/sim.hpp"

#include <algorithm>
#include <numbers>

namespace seek {

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw ValidationError("sim.dt", "must be finite and > 0, got " + std::to_string(cfg.dt));
  }
  if (!(cfg.t_end >= cfg.dt) || !std::isfinite(cfg.t_end)) {
    throw ValidationError("sim.t_end", "must be finite and >= dt, got " + std::to_string(cfg.t_end));
  }
  if (cfg.record_every < 1) {
    throw ValidationError("sim.record_every", "must be >= 1, got " + std::to_string(cfg.record_every));
  }
}

EscSystem::EscSystem(Design design, SimParams params, Sensor sensor)
    : design_(design), params_(params), sensor_(std::move(sensor)) {
  validate(params_);
}

EscSystem::state_type EscSystem::derivative(const state_type& y, double t) {
  const auto ev = esc_evaluate(design_, params_, sensor_, PlantState{y[0], y[1], y[2], t});
  last_measured_ = ev.measured;
  last_velocity_ = ev.velocity;
  return {ev.rate.dx, ev.rate.dy, ev.rate.dh};
}

Sample EscSystem::sample(const state_type& y, double t) const {
  return {t, y[0], y[1], y[2], last_measured_, last_velocity_};
}

LbsSystem::LbsSystem(Design design, ObjectiveField field, double omega, double c, double a,
                     double theta0)
    : design_(design), field_(std::move(field)), omega_(omega), c_(c), a_(a), theta0_(theta0) {
  validate(field_);
}

LbsSystem::state_type LbsSystem::derivative(const state_type& y, double t) {
  const auto r = lbs_rhs(design_, field_, omega_, LbsState{y[0], y[1], t}, c_, a_, theta0_);
  const double th = omega_ * t + theta0_;
  last_speed_ = r.dxbar * std::cos(th) + r.dybar * std::sin(th);
  return {r.dxbar, r.dybar};
}

Sample LbsSystem::sample(const state_type& y, double t) const {
  return {t, y[0], y[1], 0.0, eval(field_, y[0], y[1]), last_speed_};
}

double default_esc_dt(double epsilon) { return epsilon / 200.0; }

double default_lbs_dt(double omega) {
  return std::min(1e-3, 2.0 * std::numbers::pi / (200.0 * omega));
}

Trajectory simulate_esc(Design design, const SimParams& params, const ObjectiveField& field,
                        const MeasurementModel& sensor, Point start, double h0,
                        const IntegratorConfig& cfg) {
  EscSystem sys(design, params, Sensor(field, sensor));
  const double h_init = params.hpf_gain > 0.0 ? h0 : 0.0;
  Trajectory traj = integrate(sys, {start.x, start.y, h_init}, cfg);
  traj.meta = {std::string(to_string(design)), std::string(kind_name(field)), params,
               sensor.rng_seed, cfg.dt};
  return traj;
}

Trajectory simulate_lbs(Design design, const ObjectiveField& field, double omega, double c,
                        double a, double theta0, Point start, const IntegratorConfig& cfg) {
  LbsSystem sys(design, field, omega, c, a, theta0);
  Trajectory traj = integrate(sys, {start.x, start.y}, cfg);
  SimParams p;
  p.a = a;
  p.c = c;
  p.omega = omega;
  p.theta0 = theta0;
  traj.meta = {design == Design::ThirdOrder ? "lbs3" : "lbs1", std::string(kind_name(field)), p, 0,
               cfg.dt};
  return traj;
}

}  // namespace seek

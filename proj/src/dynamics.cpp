#include "seek/dynamics.hpp"

#include <cmath>
#include <string>

#include "seek/error.hpp"

namespace seek {

std::string_view to_string(Design design) {
  return design == Design::ThirdOrder ? "third_order" : "first_order";
}

Design design_from_string(std::string_view name) {
  if (name == "third_order") return Design::ThirdOrder;
  if (name == "first_order") return Design::FirstOrder;
  throw ValidationError("esc.design",
                        "expected third_order or first_order, got '" + std::string(name) + "'");
}

DitherOrder dither_order(Design design) {
  return design == Design::ThirdOrder ? DitherOrder::C3 : DitherOrder::C1;
}

void validate(const SimParams& p) {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(key, "must be finite and > 0, got " + std::to_string(v));
    }
  };
  positive(p.a, "esc.a");
  positive(p.c, "esc.c");
  positive(p.epsilon, "esc.epsilon");
  positive(p.omega, "esc.omega");
  if (!(p.hpf_gain >= 0.0) || !std::isfinite(p.hpf_gain)) {
    throw ValidationError("esc.hpf_gain", "must be finite and >= 0, got " + std::to_string(p.hpf_gain));
  }
  if (!std::isfinite(p.theta0)) throw ValidationError("esc.theta0", "must be finite");
  if (p.kappa < 1) throw ValidationError("dither.kappa", "must be >= 1");
}

namespace {

double law(DitherOrder order, const SimParams& p, double filtered_J, double t) {
  const auto u = scaled_inputs(DitherSpec{order, p.kappa, p.epsilon}, t);
  return p.c * filtered_J * u.v1 + p.a * u.v2;
}

}  // namespace

double commanded_velocity(const SimParams& params, double filtered_J, double t) {
  return law(DitherOrder::C3, params, filtered_J, t);
}

// The C1 pair puts cos on the objective channel and sin on the dither channel;
// with g1 = +c J this yields the descending bracket -c a (grad J . d) d.
double commanded_velocity_first_order(const SimParams& params, double filtered_J, double t) {
  return law(DitherOrder::C1, params, filtered_J, t);
}

double commanded_velocity(Design design, const SimParams& params, double filtered_J, double t) {
  return law(dither_order(design), params, filtered_J, t);
}

EscEvaluation esc_evaluate(Design design, const SimParams& params, Sensor& sensor,
                           const PlantState& s) {
  const double m = sensor.measure(s.x, s.y, s.t);
  const bool filtered = params.hpf_gain > 0.0;
  const double f = filtered ? m - params.hpf_gain * s.h : m;
  const double v = commanded_velocity(design, params, f, s.t);
  const double heading = params.omega * s.t + params.theta0;
  EscEvaluation out;
  out.rate = {v * std::cos(heading), v * std::sin(heading), filtered ? f : 0.0};
  out.measured = m;
  out.velocity = v;
  return out;
}

PlantRate esc3_rhs(const SimParams& params, Sensor& sensor, const PlantState& state) {
  return esc_evaluate(Design::ThirdOrder, params, sensor, state).rate;
}

PlantRate esc1_rhs(const SimParams& params, Sensor& sensor, const PlantState& state) {
  return esc_evaluate(Design::FirstOrder, params, sensor, state).rate;
}

LbsRate lbs3_rhs(const ObjectiveField& field, double omega, const LbsState& s, double c, double a,
                 double theta0) {
  const auto d3 = third_partials(field, s.xbar, s.ybar);
  const double th = omega * s.t + theta0;
  const double co = std::cos(th);
  const double si = std::sin(th);
  const double bracket = c * a * a * a * (d3.xxx * co * co * co + d3.yyy * si * si * si);
  return {-co * bracket, -si * bracket};
}

LbsRate lbs3_rhs_ltv(double c1, double c2, Point target, double omega, const LbsState& s,
                     double theta0) {
  const double th = omega * s.t + theta0;
  const double co = std::cos(th);
  const double si = std::sin(th);
  const double bracket =
      c1 * (s.xbar - target.x) * co * co * co + c2 * (s.ybar - target.y) * si * si * si;
  return {-co * bracket, -si * bracket};
}

LbsRate lbs1_rhs(const ObjectiveField& field, double omega, const LbsState& s, double c, double a,
                 double theta0) {
  const auto g = gradient(field, s.xbar, s.ybar);
  const double th = omega * s.t + theta0;
  const double co = std::cos(th);
  const double si = std::sin(th);
  const double directional = c * a * (g.dx * co + g.dy * si);
  return {-co * directional, -si * directional};
}

LbsRate lbs_rhs(Design design, const ObjectiveField& field, double omega, const LbsState& state,
                double c, double a, double theta0) {
  return design == Design::ThirdOrder ? lbs3_rhs(field, omega, state, c, a, theta0)
                                      : lbs1_rhs(field, omega, state, c, a, theta0);
}

TransformedState to_rotating(Point p, Point target, double omega, double t) {
  const double dx = p.x - target.x;
  const double dy = p.y - target.y;
  const double co = std::cos(omega * t);
  const double si = std::sin(omega * t);
  return {dx * co + dy * si, dx * si - dy * co};
}

Point from_rotating(TransformedState s, Point target, double omega, double t) {
  const double co = std::cos(omega * t);
  const double si = std::sin(omega * t);
  return {target.x + s.xi * co + s.eta * si, target.y + s.xi * si - s.eta * co};
}

}  // namespace seek

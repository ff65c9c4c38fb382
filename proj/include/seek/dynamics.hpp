#pragma once

#include <string_view>

#include "seek/dither.hpp"
#include "seek/field.hpp"

namespace seek {

/// Which ESC velocity law drives the unicycle.
enum class Design { ThirdOrder, FirstOrder };

std::string_view to_string(Design design);
Design design_from_string(std::string_view name);

/// The dither order a design uses.
DitherOrder dither_order(Design design);

/// Controller and plant constants shared by both designs.
struct SimParams {
  double a = 0.5;         ///< dither gain
  double c = 0.5;         ///< objective gain
  double epsilon = 1e-3;  ///< dither period [s]
  double omega = 1.4;     ///< heading rate [rad/s]
  double hpf_gain = 0.0;  ///< washout constant e [1/s]; 0 disables the filter
  double theta0 = 0.0;    ///< initial heading [rad]
  int kappa = 1;          ///< dither frequency multiplier
};

void validate(const SimParams& params);

/// Unicycle position, washout state and clock.
struct PlantState {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  double t = 0.0;
};

struct PlantRate {
  double dx = 0.0;
  double dy = 0.0;
  double dh = 0.0;
};

/// Third-order law: v = c f u1 + a u2 with the C3 dithers; for kappa = 1 this is
/// 2 (2 pi / eps)^(3/4) (3 c f sin(6 pi t / eps) + a cos(2 pi t / eps)).
double commanded_velocity(const SimParams& params, double filtered_J, double t);

/// First-order comparator: 2 sqrt(pi / eps) (c f cos(2 pi t / eps) + a sin(2 pi t / eps)).
double commanded_velocity_first_order(const SimParams& params, double filtered_J, double t);

double commanded_velocity(Design design, const SimParams& params, double filtered_J, double t);

/// Full right-hand side plus the by-products worth recording.
struct EscEvaluation {
  PlantRate rate;
  double measured = 0.0;  ///< sensor output at (x, y, t)
  double velocity = 0.0;  ///< commanded forward speed
};

/// One sensor read per call; the sensor's hold/noise state advances.
EscEvaluation esc_evaluate(Design design, const SimParams& params, Sensor& sensor,
                           const PlantState& state);

PlantRate esc3_rhs(const SimParams& params, Sensor& sensor, const PlantState& state);
PlantRate esc1_rhs(const SimParams& params, Sensor& sensor, const PlantState& state);

/// Lie bracket system (averaged dynamics) state.
struct LbsState {
  double xbar = 0.0;
  double ybar = 0.0;
  double t = 0.0;
};

struct LbsRate {
  double dxbar = 0.0;
  double dybar = 0.0;
};

/// Third-order LBS: -c a^3 (J_xxx cos^3 + J_yyy sin^3) along the heading (cos, sin).
/// Only the pure partials enter, which is exact for separable fields.
LbsRate lbs3_rhs(const ObjectiveField& field, double omega, const LbsState& state, double c,
                 double a, double theta0 = 0.0);

/// Linear time-varying form of the third-order LBS for the quartic, with
/// c1 = 24 c a^3 C1 and c2 = 24 c a^3 C2.
LbsRate lbs3_rhs_ltv(double c1, double c2, Point target, double omega, const LbsState& state,
                     double theta0 = 0.0);

/// First-order LBS: -c a (grad J . d) d with d the heading unit vector.
LbsRate lbs1_rhs(const ObjectiveField& field, double omega, const LbsState& state, double c,
                 double a, double theta0 = 0.0);

LbsRate lbs_rhs(Design design, const ObjectiveField& field, double omega, const LbsState& state,
                double c, double a, double theta0 = 0.0);

/// Error coordinates in the frame rotating with the heading.
struct TransformedState {
  double xi = 0.0;
  double eta = 0.0;
};

TransformedState to_rotating(Point p, Point target, double omega, double t);
Point from_rotating(TransformedState s, Point target, double omega, double t);

}  // namespace seek

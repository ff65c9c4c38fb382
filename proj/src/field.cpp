#include "seek/field.hpp"

#include <cmath>
#include <string>

#include "seek/error.hpp"

namespace seek {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw ValidationError("", "field evaluated at non-finite point (" + std::to_string(x) + ", " +
                                  std::to_string(y) + ")");
  }
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(key, "must be finite and > 0, got " + std::to_string(v));
  }
}

void require_finite_param(double v, const char* key) {
  if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
}

double bowl_exp(const LightBowlField& f, double dx, double dy) {
  return std::exp(-(dx * dx + dy * dy) / (2.0 * f.width * f.width));
}

}  // namespace

void validate(const ObjectiveField& field) {
  std::visit(overloaded{
                 [](const QuarticField& f) {
                   require_positive(f.c1_coeff, "field.C1");
                   require_positive(f.c2_coeff, "field.C2");
                   require_finite_param(f.x_target, "field.xd");
                   require_finite_param(f.y_target, "field.yd");
                 },
                 [](const QuadraticField& f) {
                   require_positive(f.c1_coeff, "field.C1");
                   require_positive(f.c2_coeff, "field.C2");
                   require_finite_param(f.x_target, "field.xd");
                   require_finite_param(f.y_target, "field.yd");
                 },
                 [](const LightBowlField& f) {
                   require_finite_param(f.baseline, "field.L0");
                   require_positive(f.depth, "field.A");
                   require_positive(f.width, "field.sigma");
                   require_finite_param(f.x_source, "field.xd");
                   require_finite_param(f.y_source, "field.yd");
                 },
             },
             field);
}

std::string_view kind_name(const ObjectiveField& field) {
  return std::visit(overloaded{
                        [](const QuarticField&) { return std::string_view{"quartic"}; },
                        [](const QuadraticField&) { return std::string_view{"quadratic"}; },
                        [](const LightBowlField&) { return std::string_view{"light"}; },
                    },
                    field);
}

double eval(const ObjectiveField& field, double x, double y) {
  require_finite(x, y);
  return std::visit(overloaded{
                        [&](const QuarticField& f) {
                          const double dx = x - f.x_target;
                          const double dy = y - f.y_target;
                          const double dx2 = dx * dx;
                          const double dy2 = dy * dy;
                          return f.c1_coeff * dx2 * dx2 + f.c2_coeff * dy2 * dy2;
                        },
                        [&](const QuadraticField& f) {
                          const double dx = x - f.x_target;
                          const double dy = y - f.y_target;
                          return f.c1_coeff * dx * dx + f.c2_coeff * dy * dy;
                        },
                        [&](const LightBowlField& f) {
                          return f.baseline -
                                 f.depth * bowl_exp(f, x - f.x_source, y - f.y_source);
                        },
                    },
                    field);
}

Gradient gradient(const ObjectiveField& field, double x, double y) {
  require_finite(x, y);
  return std::visit(overloaded{
                        [&](const QuarticField& f) {
                          const double dx = x - f.x_target;
                          const double dy = y - f.y_target;
                          return Gradient{4.0 * f.c1_coeff * dx * dx * dx,
                                          4.0 * f.c2_coeff * dy * dy * dy};
                        },
                        [&](const QuadraticField& f) {
                          return Gradient{2.0 * f.c1_coeff * (x - f.x_target),
                                          2.0 * f.c2_coeff * (y - f.y_target)};
                        },
                        [&](const LightBowlField& f) {
                          const double dx = x - f.x_source;
                          const double dy = y - f.y_source;
                          const double s2 = f.width * f.width;
                          const double k = f.depth * bowl_exp(f, dx, dy) / s2;
                          return Gradient{k * dx, k * dy};
                        },
                    },
                    field);
}

ThirdPartials third_partials(const ObjectiveField& field, double x, double y) {
  require_finite(x, y);
  return std::visit(overloaded{
                        [&](const QuarticField& f) {
                          return ThirdPartials{24.0 * f.c1_coeff * (x - f.x_target),
                                               24.0 * f.c2_coeff * (y - f.y_target)};
                        },
                        [&](const QuadraticField&) { return ThirdPartials{0.0, 0.0}; },
                        [&](const LightBowlField& f) {
                          const double dx = x - f.x_source;
                          const double dy = y - f.y_source;
                          const double s2 = f.width * f.width;
                          const double s4 = s2 * s2;
                          const double s6 = s4 * s2;
                          const double k = f.depth * bowl_exp(f, dx, dy);
                          return ThirdPartials{k * (dx * dx * dx / s6 - 3.0 * dx / s4),
                                               k * (dy * dy * dy / s6 - 3.0 * dy / s4)};
                        },
                    },
                    field);
}

Point minimizer(const ObjectiveField& field) {
  return std::visit(overloaded{
                        [](const QuarticField& f) { return Point{f.x_target, f.y_target}; },
                        [](const QuadraticField& f) { return Point{f.x_target, f.y_target}; },
                        [](const LightBowlField& f) { return Point{f.x_source, f.y_source}; },
                    },
                    field);
}

void validate(const MeasurementModel& model) {
  auto non_negative = [](double v, const char* key) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(key, "must be finite and >= 0, got " + std::to_string(v));
    }
  };
  non_negative(model.noise_std, "sensor.noise_std");
  non_negative(model.quantum, "sensor.quantum");
  non_negative(model.hold_period, "sensor.hold_period");
}

Sensor::Sensor(ObjectiveField field, MeasurementModel model)
    : field_(std::move(field)), model_(model), rng_(model.rng_seed) {
  validate(field_);
  validate(model_);
}

double Sensor::sample(double x, double y) {
  double value = eval(field_, x, y);
  if (model_.noise_std > 0.0) value += model_.noise_std * normal_(rng_);
  return value;
}

double Sensor::measure(double x, double y, double t) {
  double value;
  if (model_.hold_period > 0.0) {
    const auto slot = static_cast<long long>(std::floor(t / model_.hold_period));
    if (!held_slot_ || *held_slot_ != slot) {
      held_value_ = sample(x, y);
      held_slot_ = slot;
    }
    value = held_value_;
  } else {
    value = sample(x, y);
  }
  if (model_.quantum > 0.0) value = model_.quantum * std::round(value / model_.quantum);
  return value;
}

double measure(const ObjectiveField& field, const MeasurementModel& model, double x, double y,
               double t) {
  Sensor sensor(field, model);
  return sensor.measure(x, y, t);
}

}  // namespace seek

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <variant>

namespace seek {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// J = C1 (x - xd)^4 + C2 (y - yd)^4, the locally quartic benchmark.
struct QuarticField {
  double c1_coeff = 1.0;
  double c2_coeff = 1.0;
  double x_target = 0.0;
  double y_target = 0.0;
};

/// J = C1 (x - xd)^2 + C2 (y - yd)^2. Used by tests; its third partials vanish.
struct QuadraticField {
  double c1_coeff = 1.0;
  double c2_coeff = 1.0;
  double x_target = 0.0;
  double y_target = 0.0;
};

/// Synthetic light reading: baseline - depth * exp(-r^2 / (2 width^2)).
/// The reading drops toward the source, so seeking the source means minimizing.
struct LightBowlField {
  double baseline = 1.0;
  double depth = 1.0;
  double x_source = 0.0;
  double y_source = 0.0;
  double width = 1.0;
};

using ObjectiveField = std::variant<QuarticField, QuadraticField, LightBowlField>;

struct Gradient {
  double dx = 0.0;
  double dy = 0.0;
};

struct ThirdPartials {
  double xxx = 0.0;
  double yyy = 0.0;
};

/// Throws ValidationError if the field violates its invariants.
void validate(const ObjectiveField& field);

std::string_view kind_name(const ObjectiveField& field);

/// Field value. Throws ValidationError on non-finite coordinates.
double eval(const ObjectiveField& field, double x, double y);

Gradient gradient(const ObjectiveField& field, double x, double y);

/// Pure third partials (J_xxx, J_yyy). Every built-in variant has them.
ThirdPartials third_partials(const ObjectiveField& field, double x, double y);

/// Location of the unique minimizer.
Point minimizer(const ObjectiveField& field);

/// Sensor imperfections applied on top of the field value. All zero means the
/// measurement is exact.
struct MeasurementModel {
  double noise_std = 0.0;
  double quantum = 0.0;
  double hold_period = 0.0;
  std::uint64_t rng_seed = 0;
};

void validate(const MeasurementModel& model);

/// Stateful measurement channel: the only view of the field a controller gets.
///
/// Pipeline is sample-and-hold, then additive Gaussian noise, then rounding to
/// the nearest multiple of `quantum`. With a hold period the noise is drawn once
/// per held sample; otherwise once per call. Output is a deterministic function
/// of the seed and the call sequence. Not thread-safe; one instance per run.
class Sensor {
 public:
  Sensor(ObjectiveField field, MeasurementModel model);

  double measure(double x, double y, double t);

  const ObjectiveField& field() const noexcept { return field_; }
  const MeasurementModel& model() const noexcept { return model_; }

 private:
  double sample(double x, double y);

  ObjectiveField field_;
  MeasurementModel model_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::optional<long long> held_slot_;
  double held_value_ = 0.0;
};

/// One-shot measurement with a fresh sensor (no hold state carried over).
double measure(const ObjectiveField& field, const MeasurementModel& model, double x, double y,
               double t);

}  // namespace seek

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "seek/error.hpp"
#include "seek/field.hpp"

using namespace seek;

namespace {

const QuarticField kQuartic{1.0, 1.0, 1.0, -2.0};

bool rel_close(double a, double b, double rel, double abs_floor = 1e-9) {
  return std::abs(a - b) <= std::max(rel * std::abs(b), abs_floor);
}

}  // namespace

TEST_CASE("quartic eval") {
  CHECK(eval(kQuartic, 1.0, -2.0) == 0.0);
  CHECK(eval(kQuartic, 1.6, -1.4) == doctest::Approx(0.2592).epsilon(1e-12));
  CHECK(eval(QuarticField{2.0, 3.0, 0.0, 0.0}, 1.0, 1.0) == doctest::Approx(5.0));
}

TEST_CASE("light bowl eval") {
  const LightBowlField bowl{1.0, 1.0, 0.0, 0.0, 1.0};
  CHECK(eval(bowl, 0.0, 0.0) == 0.0);
  CHECK(eval(bowl, 30.0, 0.0) == doctest::Approx(1.0));
  CHECK(eval(bowl, 1.0, 0.0) == doctest::Approx(1.0 - std::exp(-0.5)));
}

TEST_CASE("non-finite input is rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eval(kQuartic, nan, 0.0), ValidationError);
  CHECK_THROWS_AS(third_partials(kQuartic, 0.0, INFINITY), ValidationError);
}

TEST_CASE("field invariants are validated") {
  CHECK_THROWS_AS(validate(ObjectiveField{QuarticField{0.0, 1.0, 0.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(validate(ObjectiveField{LightBowlField{1.0, -1.0, 0.0, 0.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(validate(ObjectiveField{LightBowlField{1.0, 1.0, 0.0, 0.0, 0.0}}), ValidationError);
  CHECK_NOTHROW(validate(ObjectiveField{kQuartic}));
}

TEST_CASE("quartic positive off the minimizer and symmetric about it") {
  for (const auto& p : oracle::random_points(7, 200, -5.0, 5.0)) {
    const double v = eval(kQuartic, p[0], p[1]);
    CHECK(v > 0.0);
    CHECK(eval(kQuartic, 2.0 * 1.0 - p[0], 2.0 * -2.0 - p[1]) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("third partials, analytic values") {
  auto at_min = third_partials(kQuartic, 1.0, -2.0);
  CHECK(at_min.xxx == 0.0);
  CHECK(at_min.yyy == 0.0);
  auto off = third_partials(kQuartic, 1.6, -1.4);
  CHECK(off.xxx == doctest::Approx(14.4).epsilon(1e-12));
  CHECK(off.yyy == doctest::Approx(14.4).epsilon(1e-12));
  auto quad = third_partials(QuadraticField{1.0, 2.0, 0.0, 0.0}, 3.0, -1.0);
  CHECK(quad.xxx == 0.0);
  CHECK(quad.yyy == 0.0);
}

TEST_CASE("third partials match finite differences of eval") {
  const std::vector<ObjectiveField> fields = {
      kQuartic,
      QuarticField{0.7, 2.5, -0.3, 0.4},
      LightBowlField{2.0, 1.5, 0.2, -0.1, 0.8},
  };
  const double h = 1e-3;
  for (const auto& field : fields) {
    CAPTURE(kind_name(field));
    oracle::Scalar2 f = [&](double x, double y) { return eval(field, x, y); };
    for (const auto& p : oracle::random_points(11, 5, -1.5, 1.5)) {
      const auto d = third_partials(field, p[0], p[1]);
      CHECK(rel_close(d.xxx, oracle::third_x(f, p[0], p[1], h), 1e-5, 1e-5));
      CHECK(rel_close(d.yyy, oracle::third_y(f, p[0], p[1], h), 1e-5, 1e-5));
    }
  }
}

TEST_CASE("gradient matches finite differences of eval") {
  const std::vector<ObjectiveField> fields = {
      kQuartic, QuadraticField{1.5, 0.5, 0.1, 0.2}, LightBowlField{1.0, 2.0, -0.4, 0.3, 0.6}};
  for (const auto& field : fields) {
    oracle::Scalar2 f = [&](double x, double y) { return eval(field, x, y); };
    for (const auto& p : oracle::random_points(3, 8, -1.0, 1.0)) {
      const auto g = gradient(field, p[0], p[1]);
      CHECK(rel_close(g.dx, oracle::first_x(f, p[0], p[1], 1e-5), 1e-6, 1e-8));
      CHECK(rel_close(g.dy, oracle::first_y(f, p[0], p[1], 1e-5), 1e-6, 1e-8));
    }
  }
}

TEST_CASE("minimizer") {
  CHECK(minimizer(kQuartic).x == 1.0);
  CHECK(minimizer(kQuartic).y == -2.0);
  const auto m = minimizer(LightBowlField{1.0, 1.0, 0.8035, -2.202, 0.5});
  CHECK(m.x == 0.8035);
  CHECK(m.y == -2.202);
}

TEST_CASE("measurement model") {
  SUBCASE("zeroed model is the identity") {
    Sensor s(kQuartic, MeasurementModel{});
    for (const auto& p : oracle::random_points(5, 50, -3.0, 3.0)) {
      CHECK(s.measure(p[0], p[1], 0.1) == eval(kQuartic, p[0], p[1]));
    }
  }
  SUBCASE("quantization rounds to nearest multiple") {
    MeasurementModel m;
    m.quantum = 0.1;
    CHECK(measure(kQuartic, m, 1.6, -1.4, 0.0) == doctest::Approx(0.3).epsilon(1e-12));
  }
  SUBCASE("sample and hold freezes the value within a period") {
    MeasurementModel m;
    m.hold_period = 0.5;
    Sensor s(kQuartic, m);
    const double first = s.measure(1.6, -1.4, 0.0);
    CHECK(s.measure(3.0, 3.0, 0.49) == first);
    CHECK(s.measure(1.0, -2.0, 0.5) == 0.0);
  }
  SUBCASE("noise is seeded and reproducible") {
    MeasurementModel m;
    m.noise_std = 0.05;
    m.rng_seed = 42;
    Sensor a(kQuartic, m), b(kQuartic, m);
    std::vector<double> va, vb;
    for (int i = 0; i < 100; ++i) {
      va.push_back(a.measure(1.2, -1.9, i * 0.01));
      vb.push_back(b.measure(1.2, -1.9, i * 0.01));
    }
    CHECK(va == vb);
    double mean = 0.0;
    for (double v : va) mean += v;
    mean /= va.size();
    CHECK(mean == doctest::Approx(eval(kQuartic, 1.2, -1.9)).epsilon(0.1));
    m.rng_seed = 43;
    Sensor c(kQuartic, m);
    CHECK(c.measure(1.2, -1.9, 0.0) != va.front());
  }
  SUBCASE("negative model fields are rejected") {
    MeasurementModel m;
    m.noise_std = -1.0;
    CHECK_THROWS_AS(Sensor(kQuartic, m), ValidationError);
  }
}

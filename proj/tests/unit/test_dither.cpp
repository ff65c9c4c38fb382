#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seek/dither.hpp"
#include "seek/error.hpp"

using namespace seek;
using std::numbers::pi;

TEST_CASE("C3 dither values") {
  const DitherSpec spec{DitherOrder::C3, 1, 1.0};
  auto s0 = dither_pair(spec, 0.0);
  CHECK(s0.v1 == doctest::Approx(0.0));
  CHECK(s0.v2 == doctest::Approx(7.9371556481456050).epsilon(1e-13));
  auto s1 = dither_pair(spec, 1.0 / 12.0);
  CHECK(s1.v1 == doctest::Approx(23.811466944436815).epsilon(1e-13));
  CHECK(s1.v2 == doctest::Approx(6.8737784250852354).epsilon(1e-13));
}

TEST_CASE("C1 and C2 dither values") {
  auto c1 = dither_pair({DitherOrder::C1, 1, 1.0}, 0.0);
  CHECK(c1.v1 == doctest::Approx(2.0 * std::sqrt(pi)));
  CHECK(c1.v2 == 0.0);
  auto c2 = dither_pair({DitherOrder::C2, 1, 1.0}, 0.0);
  CHECK(c2.v1 == doctest::Approx(-2.0 * std::pow(4.0 * pi, 2.0 / 3.0)));
  CHECK(c2.v2 == doctest::Approx(std::pow(4.0 * pi, 2.0 / 3.0)));
}

TEST_CASE("scaled inputs") {
  auto u = scaled_inputs({DitherOrder::C3, 1, 0.001}, 0.0);
  CHECK(u.v1 == doctest::Approx(0.0));
  CHECK(u.v2 == doctest::Approx(1411.4480463371470).epsilon(1e-12));

  auto c1 = scaled_inputs({DitherOrder::C1, 1, 0.01}, 0.0);
  CHECK(c1.v1 == doctest::Approx(35.449077018110321).epsilon(1e-12));

  // Matches the explicit third-order coefficients.
  const double eps = 0.003;
  for (double t : {0.0, 0.0001, 0.0017, 0.123}) {
    auto v = scaled_inputs({DitherOrder::C3, 1, eps}, t);
    const double k = std::pow(2.0 * pi / eps, 0.75);
    CHECK(v.v1 == doctest::Approx(6.0 * k * std::sin(6.0 * pi * t / eps)).epsilon(1e-12));
    CHECK(v.v2 == doctest::Approx(2.0 * k * std::cos(2.0 * pi * t / eps)).epsilon(1e-12));
  }
}

TEST_CASE("dithers are epsilon-periodic and bounded") {
  for (auto order : {DitherOrder::C1, DitherOrder::C2, DitherOrder::C3}) {
    for (int kappa = 1; kappa <= 3; ++kappa) {
      const DitherSpec spec{order, kappa, 0.01};
      const double amp1 = std::abs(dither_pair(spec, order == DitherOrder::C3 ? 1.0 / (12.0 * kappa) : 0.0).v1);
      for (const auto& p : oracle::random_points(static_cast<unsigned>(kappa), 20, 0.0, 2.0)) {
        const double t = p[0];
        auto a = scaled_inputs(spec, t);
        auto b = scaled_inputs(spec, t + spec.epsilon);
        CHECK(a.v1 == doctest::Approx(b.v1).epsilon(1e-8).scale(100));
        CHECK(a.v2 == doctest::Approx(b.v2).epsilon(1e-8).scale(100));
        CHECK(std::abs(dither_pair(spec, p[1]).v1) <= amp1 * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(validate(DitherSpec{DitherOrder::C3, 0, 0.1}), ValidationError);
  CHECK_THROWS_AS(validate(DitherSpec{DitherOrder::C3, 1, 0.0}), ValidationError);
  CHECK_THROWS_AS(dither_order_from_string("c4"), ValidationError);
  CHECK(dither_order_from_string("c2") == DitherOrder::C2);
  CHECK(DitherSpec{DitherOrder::C1, 1, 1}.bracket_depth() == 2);
  CHECK(DitherSpec{DitherOrder::C3, 1, 1}.bracket_depth() == 4);
}

TEST_CASE("moment check selectivity") {
  for (int kappa = 1; kappa <= 5; ++kappa) {
    CAPTURE(kappa);
    for (auto order : {DitherOrder::C1, DitherOrder::C2, DitherOrder::C3}) {
      const auto r = moment_check({order, kappa, 1.0});
      CHECK(std::abs(r.m1) < 1e-8);
      CHECK(std::abs(r.m2) < 1e-8);
      if (order == DitherOrder::C1) {
        CHECK(std::abs(r.lambda12) > 0.1);
      } else {
        CHECK(std::abs(r.lambda12) < 1e-8);
      }
    }
  }
}

TEST_CASE("moment check agrees with an independent nested Simpson quadrature") {
  for (auto order : {DitherOrder::C1, DitherOrder::C2, DitherOrder::C3}) {
    const DitherSpec spec{order, 1, 1.0};
    auto v1 = [&](double s) { return dither_pair(spec, s).v1; };
    auto v2 = [&](double s) { return dither_pair(spec, s).v2; };
    const double lambda = oracle::simpson(
        [&](double s) { return v2(s) * (s > 0 ? oracle::simpson(v1, 0.0, s, 200) : 0.0); }, 0.0, 1.0, 400);
    CHECK(moment_check(spec).lambda12 == doctest::Approx(lambda).epsilon(1e-6).scale(1.0));
  }
  // C1 closed form: 2 int_0^1 sin^2(2 pi s) ds = 1.
  CHECK(moment_check({DitherOrder::C1, 1, 1.0}).lambda12 == doctest::Approx(1.0).epsilon(1e-6));
}

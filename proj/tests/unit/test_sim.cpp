#include <doctest.h>

#include <cmath>

#include "seek/error.hpp"
#include "seek/sim.hpp"

using namespace seek;

namespace {

struct Decay {
  using state_type = StateVec<1>;
  double rate = 1.0;
  state_type derivative(const state_type& y, double) const { return {-rate * y[0]}; }
  Sample sample(const state_type& y, double t) const { return {t, y[0], 0.0, 0.0, 0.0, 0.0}; }
};

// y' = y^2 escapes to infinity at t = 1 from y(0) = 1.
struct Blowup {
  using state_type = StateVec<1>;
  state_type derivative(const state_type& y, double) const { return {y[0] * y[0]}; }
  Sample sample(const state_type& y, double t) const { return {t, y[0], 0.0, 0.0, 0.0, 0.0}; }
};

// y' = cos(t) y, exact solution exp(sin t); exercises the time argument of every stage.
struct Forced {
  using state_type = StateVec<1>;
  state_type derivative(const state_type& y, double t) const { return {std::cos(t) * y[0]}; }
  Sample sample(const state_type& y, double t) const { return {t, y[0], 0.0, 0.0, 0.0, 0.0}; }
};

SimParams table1() {
  SimParams p;
  p.a = 0.5;
  p.c = 0.5;
  p.epsilon = 0.001;
  p.omega = 1.4;
  return p;
}

const QuarticField kQuartic{1.0, 1.0, 1.0, -2.0};

}  // namespace

TEST_CASE("single RK4 step") {
  auto rhs = [](const StateVec<1>& y, double) { return StateVec<1>{-y[0]}; };
  const auto y1 = rk4_step<1>(rhs, StateVec<1>{1.0}, 0.0, 0.1);
  CHECK(y1[0] == doctest::Approx(0.9048375).epsilon(1e-15));
}

TEST_CASE("RK4 is fourth order") {
  Forced sys;
  double prev = 0.0;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    const auto traj = integrate(sys, StateVec<1>{1.0}, {dt, 2.0, 1});
    const double err = std::abs(traj.back().x - std::exp(std::sin(2.0)));
    if (prev > 0.0) CHECK(prev / err >= 12.0);
    prev = err;
  }
}

TEST_CASE("sample count and timestamps") {
  Decay sys;
  const auto traj = integrate(sys, StateVec<1>{1.0}, {0.1, 1.0, 1});
  REQUIRE(traj.samples.size() == 11);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.back().t == doctest::Approx(1.0));
  CHECK(traj.back().x == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK_FALSE(traj.aborted);
}

TEST_CASE("a short last step lands exactly on t_end") {
  Decay sys;
  const auto traj = integrate(sys, StateVec<1>{1.0}, {0.3, 1.0, 1});
  CHECK(traj.back().t == 1.0);
  CHECK(traj.back().x == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("decimation keeps a subset of identical samples") {
  EscSystem full(Design::ThirdOrder, table1(), Sensor(kQuartic, {}));
  EscSystem thin(Design::ThirdOrder, table1(), Sensor(kQuartic, {}));
  const StateVec<3> y0{1.6, -1.4, 0.0};
  const auto a = integrate(full, y0, {5e-6, 0.05, 1});
  const auto b = integrate(thin, y0, {5e-6, 0.05, 10});
  REQUIRE(a.samples.size() == 10001);
  REQUIRE(b.samples.size() == 1001);
  for (std::size_t i = 0; i + 1 < b.samples.size(); ++i) {
    const auto& sa = a.samples[10 * i];
    const auto& sb = b.samples[i];
    CHECK(std::abs(sa.t - sb.t) < 1e-12);
    CHECK(std::abs(sa.x - sb.x) < 1e-12);
    CHECK(std::abs(sa.y - sb.y) < 1e-12);
    CHECK(std::abs(sa.v - sb.v) < 1e-9);
  }
}

TEST_CASE("recorded by-products belong to the recorded state") {
  const auto traj = simulate_esc(Design::ThirdOrder, table1(), kQuartic, {}, {1.6, -1.4}, 0.0,
                                 {5e-6, 0.01, 7});
  for (const auto& s : traj.samples) {
    CHECK(s.J == doctest::Approx(eval(kQuartic, s.x, s.y)).epsilon(1e-14));
    CHECK(s.v == doctest::Approx(commanded_velocity(table1(), s.J, s.t)).epsilon(1e-12));
  }
}

TEST_CASE("step above the ESC limit is rejected") {
  EscSystem sys(Design::ThirdOrder, table1(), Sensor(kQuartic, {}));
  CHECK_THROWS_AS(integrate(sys, StateVec<3>{1.6, -1.4, 0.0}, {1e-5, 0.01, 1}), StepSizeError);
  CHECK_NOTHROW(integrate(sys, StateVec<3>{1.6, -1.4, 0.0}, {5e-6, 0.001, 1}));
}

TEST_CASE("integrator config validation") {
  Decay sys;
  CHECK_THROWS_AS(integrate(sys, StateVec<1>{1.0}, {0.0, 1.0, 1}), ValidationError);
  CHECK_THROWS_AS(integrate(sys, StateVec<1>{1.0}, {0.1, -1.0, 1}), ValidationError);
  CHECK_THROWS_AS(integrate(sys, StateVec<1>{1.0}, {0.1, 1.0, 0}), ValidationError);
}

TEST_CASE("a non-finite state aborts the run and keeps the samples") {
  Blowup sys;
  const auto traj = integrate(sys, StateVec<1>{1.0}, {0.01, 2.0, 1});
  CHECK(traj.aborted);
  CHECK_FALSE(traj.abort_reason.empty());
  REQUIRE_FALSE(traj.samples.empty());
  CHECK(traj.back().t < 1.1);
  for (const auto& s : traj.samples) CHECK(std::isfinite(s.x));
}

TEST_CASE("LBS started at the minimizer stays there") {
  const auto traj = simulate_lbs(Design::ThirdOrder, kQuartic, 1.4, 0.5, 0.5, 0.0, {1.0, -2.0},
                                 {default_lbs_dt(1.4), 10.0, 100});
  for (const auto& s : traj.samples) {
    CHECK(s.x == 1.0);
    CHECK(s.y == -2.0);
  }
  CHECK(traj.meta.design == "lbs3");
}

TEST_CASE("default steps") {
  CHECK(default_esc_dt(0.001) == doctest::Approx(5e-6));
  CHECK(default_lbs_dt(1.4) == doctest::Approx(1e-3));
  CHECK(default_lbs_dt(100.0) == doctest::Approx(2 * 3.141592653589793 / 20000.0));
}

TEST_CASE("simulation is reproducible for a fixed seed") {
  MeasurementModel noisy;
  noisy.noise_std = 0.01;
  noisy.rng_seed = 5;
  const IntegratorConfig cfg{5e-6, 0.02, 50};
  const auto a = simulate_esc(Design::ThirdOrder, table1(), kQuartic, noisy, {1.6, -1.4}, 0.0, cfg);
  const auto b = simulate_esc(Design::ThirdOrder, table1(), kQuartic, noisy, {1.6, -1.4}, 0.0, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].x == b.samples[i].x);
    CHECK(a.samples[i].J == b.samples[i].J);
  }
  CHECK(a.meta.seed == 5);
  CHECK(a.meta.design == "third_order");
  CHECK(a.meta.field == "quartic");
}

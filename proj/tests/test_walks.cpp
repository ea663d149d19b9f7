#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "harmlab/walk_sim.hpp"
#include "oracles.hpp"

using namespace harmlab;

namespace {

struct Env {
  GroupContext ctx;
  StepDistribution dist;
};

Env env_for(const std::string& spec) {
  Env e;
  e.ctx = make_group(parse_family(spec));
  e.dist = uniform_steps(e.ctx);
  return e;
}

}  // namespace

TEST_CASE("seed determinism and serial/parallel agreement") {
  const Env e = env_for("free:2");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 2);
  const auto a = sample_exit(ball, 0, 50'000, 7);
  const auto b = sample_exit(ball, 0, 50'000, 7);
  REQUIRE(a.counts == b.counts);
  REQUIRE(a.cap_hits == b.cap_hits);

  const auto serial = sample_exit_serial(ball, 0, 50'000, 7);
  REQUIRE(a.counts == serial.counts);

  const auto other = sample_exit(ball, 0, 50'000, 8);
  CHECK(a.counts != other.counts);
}

TEST_CASE("single walk lands on exactly one boundary vertex") {
  const Env e = env_for("z:2");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 1);
  const auto emp = sample_exit(ball, 0, 1, 3);
  uint64_t total = 0;
  for (uint64_t c : emp.counts) total += c;
  CHECK(total == 1);
  CHECK(emp.cap_hits == 0);
}

TEST_CASE("Z ball frequencies approach the gambler's-ruin law") {
  const Env e = env_for("z:1");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 2);
  const auto emp = sample_exit(ball, 0, 1'000'000, 20240601);
  REQUIRE(emp.valid());
  const int32_t up = ball.boundary_index(parse_element(e.ctx, "x1x1x1"));
  const double freq = static_cast<double>(emp.counts[up]) / 1e6;
  CHECK(std::fabs(freq - 0.5) < 0.002);  // 3 sigma is about 0.0015
}

TEST_CASE("compare_to_exact and its preconditions") {
  const Env e = env_for("free:2");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 3);
  const auto em = exit_measure<Rational>(ball);
  const auto emp = sample_exit(ball, 0, 1'000'000, 11);
  const auto cmp = compare_to_exact(emp, em);
  CHECK(cmp.z_max < 5.0);
  CHECK(cmp.total_variation < 0.01);

  const DirectedBall other = build_ball(e.ctx.identity, e.dist, 2);
  const auto em_other = exit_measure<Rational>(other);
  CHECK_THROWS_AS(compare_to_exact(emp, em_other), std::invalid_argument);
}

TEST_CASE("rounding an exact row gives TV within the rounding bound") {
  const Env e = env_for("z:1");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 3);
  const auto em = exit_measure<Rational>(ball);
  const uint64_t n = 1000;
  EmpiricalExitMeasure emp;
  emp.region = &ball;
  emp.start = 0;
  emp.samples = n;
  emp.seed = 0;
  emp.counts.resize(ball.boundary_count());
  for (int32_t x = 0; x < ball.boundary_count(); ++x) {
    emp.counts[x] = static_cast<uint64_t>(std::llround(em.value(0, x).get_d() * n));
  }
  const auto cmp = compare_to_exact(emp, em);
  CHECK(cmp.total_variation <= static_cast<double>(ball.boundary_count()) / (2.0 * n));
}

TEST_CASE("step cap is counted and invalidates the run") {
  // A lazy walk that almost never moves: the cap must trip.
  const Env e = env_for("z:1");
  StepDistribution lazy;
  lazy.steps = {{e.ctx.identity, Rational(999'999'999, 1'000'000'000)},
                {e.ctx.generator("x1"), Rational(1, 2'000'000'000)},
                {e.ctx.generator("X1"), Rational(1, 2'000'000'000)}};
  lazy.min_prob = Rational(1, 2'000'000'000);
  const DirectedBall ball = build_ball(e.ctx.identity, lazy, 0);
  const auto emp = sample_exit(ball, 0, 8, 5);
  CHECK(emp.cap_hits > 0);
  CHECK_FALSE(emp.valid());
  uint64_t total = emp.cap_hits;
  for (uint64_t c : emp.counts) total += c;
  CHECK(total == 8);
}

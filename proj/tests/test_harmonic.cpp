#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "harmlab/harmonic.hpp"
#include "harmlab/suites.hpp"
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

TEST_CASE("select_extremal_boundary") {
  const Env f = env_for("free:2");
  const DirectedBall fball = build_ball(f.ctx.identity, f.dist, 1);
  const auto fem = exit_measure<Rational>(fball);
  const int32_t a_idx = fball.interior_index(parse_element(f.ctx, "a"));
  const auto xn = select_extremal_boundary(fem, 0, a_idx);
  REQUIRE(xn.has_value());
  CHECK(format_element(fball.boundary[*xn]) == "aa");  // first of the tied maximizers

  const Env z = env_for("z:1");
  const DirectedBall zball = build_ball(z.ctx.identity, z.dist, 2);
  const auto zem = exit_measure<Rational>(zball);
  const auto zx = select_extremal_boundary(zem, 0, zball.interior_index(parse_element(z.ctx, "x1")));
  REQUIRE(zx.has_value());
  CHECK(format_element(zball.boundary[*zx]) == "(3)");

  CHECK_FALSE(select_extremal_boundary(zem, 0, 0).has_value());  // measures identical
}

TEST_CASE("build_fn and its exact invariants") {
  const Env z = env_for("z:1");
  const DirectedBall ball = build_ball(z.ctx.identity, z.dist, 2);
  const auto em = exit_measure<Rational>(ball);
  const int32_t x3 = ball.boundary_index(parse_element(z.ctx, "x1x1x1"));
  const auto f = build_fn(em, 0, x3);
  CHECK(f.interior[0] == Rational(1));
  CHECK(f.interior[ball.interior_index(parse_element(z.ctx, "x1"))] == Rational(4, 3));
  CHECK(harmonicity_residual(f) == Rational(0));
  for (int32_t v = 0; v < ball.interior_count(); ++v) {
    CHECK(optional_stopping_residual(f, em, v) == Rational(0));
  }

  const Env fr = env_for("free:2");
  const DirectedBall fball = build_ball(fr.ctx.identity, fr.dist, 1);
  const auto fem = exit_measure<Rational>(fball);
  const int32_t aa = fball.boundary_index(parse_element(fr.ctx, "aa"));
  const auto ff = build_fn(fem, 0, aa);
  CHECK(ff.interior[fball.interior_index(parse_element(fr.ctx, "a"))] == Rational(13, 4));
}

TEST_CASE("build_fn rejects unreachable targets") {
  const Env e = env_for("z:1");
  const DirectedBall left = build_ball(e.ctx.identity, e.dist, 1);
  const DirectedBall right = build_ball(parse_element(e.ctx, "x1x1x1x1"), e.dist, 1);
  const Region u = build_union({&left, &right}, e.dist);
  const auto em = exit_measure<Rational>(u);
  const int32_t six = u.boundary_index(parse_element(e.ctx, "x1x1x1x1x1x1"));
  REQUIRE(six >= 0);
  CHECK_THROWS_AS(build_fn(em, u.interior_index(e.ctx.identity), six), std::invalid_argument);
}

TEST_CASE("constant function is exactly harmonic") {
  const Env e = env_for("lamplighter");
  const DirectedBall ball = build_ball(e.ctx.identity, e.dist, 3);
  HarmonicApprox<Rational> ones;
  ones.region = &ball;
  ones.base = 0;
  ones.target = 0;
  ones.interior.assign(ball.interior_count(), Rational(1));
  ones.boundary.assign(ball.boundary_count(), Rational(1));
  CHECK(harmonicity_residual(ones) == Rational(0));
}

TEST_CASE("float-mode residuals stay tiny") {
  const Env z2 = env_for("z:2");
  const DirectedBall ball = build_ball(z2.ctx.identity, z2.dist, 6);
  const auto em = exit_measure<double>(ball);
  const auto xn = select_extremal_boundary(em, 0, 1).value();
  const auto f = build_fn(em, 0, xn);
  CHECK(harmonicity_residual(f) < 1e-10);

  const Env lamp = env_for("lamplighter");
  const DirectedBall lball = build_ball(lamp.ctx.identity, lamp.dist, 4);
  const auto lem = exit_measure<double>(lball);
  const auto lf = build_fn(lem, 0, select_extremal_boundary(lem, 0, 1).value());
  double worst = 0;
  for (int32_t v = 0; v < lball.interior_count(); ++v) {
    worst = std::max(worst, optional_stopping_residual(lf, lem, v));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("monotonicity examples") {
  const Env z = env_for("z:1");
  const DirectedBall a1 = build_ball(z.ctx.identity, z.dist, 1);
  const DirectedBall a2 = build_ball(z.ctx.identity, z.dist, 2);
  const GroupElement one = parse_element(z.ctx, "x1");
  const auto rep = verify_monotonicity<Rational>(a1, a2, z.ctx.identity, one);
  CHECK(rep.inner.value == Rational(1, 2));
  CHECK(rep.outer.value == Rational(1, 3));
  CHECK(rep.holds);

  const auto equal = verify_monotonicity<Rational>(a1, a1, z.ctx.identity, one);
  CHECK(equal.inner.value == equal.outer.value);
  CHECK(equal.holds);

  const Env f = env_for("free:2");
  const DirectedBall f1 = build_ball(f.ctx.identity, f.dist, 1);
  const DirectedBall f2 = build_ball(f.ctx.identity, f.dist, 2);
  const auto frep =
      verify_monotonicity<Rational>(f1, f2, f.ctx.identity, parse_element(f.ctx, "a"));
  CHECK(frep.inner.value == Rational(9, 4));
  CHECK(frep.holds);

  CHECK_THROWS_AS(verify_monotonicity<Rational>(a2, a1, z.ctx.identity, one),
                  std::invalid_argument);
}

TEST_CASE("one-step epsilon table radius-0 convention") {
  const Env z = env_for("z:1");
  OneStepEpsilonTable table(z.ctx, z.dist);
  // mu_{B(0,0)}(0,.) is (1/2, 1/2); against the indicator of one side the
  // worst ratio is |1/2 - 0| / (1/2) = 1.
  CHECK(table.eps(0, parse_element(z.ctx, "x1")) == Rational(1));
  CHECK(table.eps(1, parse_element(z.ctx, "x1")) == Rational(1, 2));
  CHECK(table.eps(5, parse_element(z.ctx, "X1")) == Rational(1, 6));
  CHECK(table.max_eps(3) == Rational(1, 4));
}

TEST_CASE("geodesic ratio traces") {
  const Env z = env_for("z:1");
  OneStepEpsilonTable table(z.ctx, z.dist);
  const DirectedBall& ball = table.ball_at(2);
  const int32_t x3 = ball.boundary_index(parse_element(z.ctx, "x1x1x1"));
  const auto column = exit_column(ball, table.lu_at(2), x3);
  const auto trace = geodesic_ratio_trace(ball, column, x3, table);
  REQUIRE(trace.steps.size() == 3);
  CHECK(trace.steps[0].ratio == Rational(3, 4));   // (1/2)/(2/3)
  CHECK(trace.steps[1].ratio == Rational(4, 5));   // (2/3)/(5/6)
  CHECK(trace.steps[2].ratio == Rational(5, 6));   // (5/6)/1
  CHECK(trace.product == Rational(1, 2));
  CHECK(trace.telescopes);
  CHECK(trace.steps[0].bound == Rational(1, 3));
  CHECK(trace.steps[1].bound == Rational(1, 2));
  CHECK(trace.steps[2].bound == Rational(1));
  CHECK(trace.all_within);

  // length-1 geodesic: single ratio mu(a,x)/1
  const DirectedBall& b0 = table.ball_at(0);
  const auto col0 = exit_column(b0, table.lu_at(0), 0);
  const auto t0 = geodesic_ratio_trace(b0, col0, 0, table);
  REQUIRE(t0.steps.size() == 1);
  CHECK(t0.product == Rational(1, 2));
  CHECK(t0.telescopes);

  const Env f = env_for("free:2");
  OneStepEpsilonTable ftable(f.ctx, f.dist);
  const DirectedBall& fball = ftable.ball_at(2);
  const int32_t aaa = fball.boundary_index(parse_element(f.ctx, "aaa"));
  const auto fcol = exit_column(fball, ftable.lu_at(2), aaa);
  const auto ftrace = geodesic_ratio_trace(fball, fcol, aaa, ftable);
  CHECK(ftrace.telescopes);
  CHECK(ftrace.product == fcol[0]);

  // a vanishing intermediate measure is rejected with its index
  std::vector<Rational> doctored = fcol;
  doctored[fball.interior_index(parse_element(f.ctx, "a"))] = 0;
  CHECK_THROWS_AS(geodesic_ratio_trace(fball, doctored, aaa, ftable), std::invalid_argument);
}

TEST_CASE("growth certificate on Z") {
  const Env z = env_for("z:1");
  const auto cert = growth_certificate(z.ctx, z.dist, Rational(1, 4), 4, 12);
  REQUIRE(cert.rows.size() == 8);
  CHECK(cert.premise_everywhere());
  CHECK(cert.coherent());
  for (const auto& row : cert.rows) {
    CHECK(row.one_step_eps_at_r == oracles::z_epsilon(row.r));
    CHECK(row.bound == rational_pow(Rational(3, 4), row.r - 4) * rational_pow(Rational(1, 2), 4));
    CHECK(row.min_mu == Rational(1, 2));
    CHECK(row.boundary_size == 2);
    CHECK(row.conclusion_holds);
  }
}

TEST_CASE("growth certificate premise fails on F2") {
  const Env f = env_for("free:2");
  const auto cert = growth_certificate(f.ctx, f.dist, Rational(1, 4), 2, 6);
  REQUIRE(cert.rows.size() == 4);
  for (const auto& row : cert.rows) {
    CHECK(row.one_step_eps_at_r > Rational(1, 4));  // fails at every s
    CHECK_FALSE(row.premise_holds);
  }
  CHECK(cert.coherent());  // vacuously: no premise, no asserted conclusion
}

TEST_CASE("growth certificate rejects bad parameters") {
  const Env z = env_for("z:1");
  CHECK_THROWS_AS(growth_certificate(z.ctx, z.dist, Rational(0), 2, 6), std::invalid_argument);
  CHECK_THROWS_AS(growth_certificate(z.ctx, z.dist, Rational(5, 4), 2, 6), std::invalid_argument);
  CHECK_THROWS_AS(growth_certificate(z.ctx, z.dist, Rational(1, 4), 6, 6), std::invalid_argument);
  CHECK_THROWS_AS(growth_certificate(z.ctx, z.dist, Rational(1, 4), 0, 6), std::invalid_argument);
}

TEST_CASE("randomized suites hold") {
  for (const std::string spec : {"z:2", "free:2", "lamplighter", "bs:1:2"}) {
    const Env e = env_for(spec);
    const auto lemma2 = lemma2_suite(e.ctx, e.dist, 25, 3, 7);
    CHECK(lemma2.ok());
    CHECK(lemma2.instances == 25);
    const auto fn = fn_invariant_suite(e.ctx, e.dist, 8, 3, 7);
    CHECK(fn.ok());
  }
  const Env z = env_for("z:1");
  const auto tele = telescoping_suite(z.ctx, z.dist, 4);
  CHECK(tele.ok());
  CHECK(tele.instances == 8);  // two boundary vertices per radius
}

#include "harmlab/suites.hpp"

#include <algorithm>

namespace harmlab {

using nlohmann::json;

json SuiteResult::to_json() const {
  return json{{"lemma", lemma},
              {"family", family},
              {"params", params},
              {"instances", instances},
              {"failures", failures}};
}

namespace {

// Draw a uniform value in [0, n) from the walk-seeded generator.
uint64_t draw(SplitMix64& rng, uint64_t n) { return n == 0 ? 0 : rng.next() % n; }

GroupElement random_short_product(const GroupContext& ctx, SplitMix64& rng, int max_len) {
  GroupElement g = ctx.identity;
  const int len = static_cast<int>(draw(rng, max_len + 1));
  for (int i = 0; i < len; ++i) {
    g = multiply(g, ctx.generators[draw(rng, ctx.generators.size())].second);
  }
  return g;
}

// Interior vertices of `region` from which boundary vertex x is reachable
// inside region + {x}; computed by reverse BFS. Used to check exactly
// where f_n must be positive.
std::vector<bool> reaches_target(const Region& region, int32_t x) {
  std::vector<bool> reach(region.interior_count(), false);
  std::vector<int32_t> stack;
  for (int32_t v : region.boundary_preds[x]) {
    if (!reach[v]) {
      reach[v] = true;
      stack.push_back(v);
    }
  }
  std::vector<std::vector<int32_t>> rev(region.interior_count());
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    for (const auto& [w, p] : region.edges_int[v]) rev[w].push_back(v);
  }
  while (!stack.empty()) {
    const int32_t v = stack.back();
    stack.pop_back();
    for (int32_t u : rev[v]) {
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reach;
}

// Runs one instance body per index under OpenMP, converting escaped
// exceptions into recorded failures instead of terminating.
template <class Body>
void run_indexed(int instances, std::vector<bool>& failed, std::vector<json>& failures,
                 const Body& body) {
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < instances; ++i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      failed[i] = true;
      failures[i] = {{"instance", i}, {"reason", std::string("exception: ") + e.what()}};
    }
  }
}

}  // namespace

SuiteResult lemma2_suite(const GroupContext& ctx, const StepDistribution& dist, int instances,
                         int max_radius, uint64_t seed) {
  if (max_radius < 2) throw std::invalid_argument("lemma2 suite needs max_radius >= 2");
  SuiteResult result;
  result.lemma = "lemma2-monotonicity";
  result.family = ctx.fam.str();
  result.params = {{"instances", instances}, {"max_radius", max_radius}, {"seed", seed}};
  result.instances = instances;

  std::vector<json> failures(instances);
  std::vector<bool> failed(instances, false);

  run_indexed(instances, failed, failures, [&](int i) {
    SplitMix64 rng(walk_seed(seed, static_cast<uint64_t>(i)));
    const int r_inner = 1 + static_cast<int>(draw(rng, max_radius - 1));
    const int r_outer = r_inner + 1 + static_cast<int>(draw(rng, max_radius - r_inner));
    const GroupElement center =
        (draw(rng, 2) == 0) ? ctx.identity : random_short_product(ctx, rng, 2);
    const DirectedBall inner = build_ball(center, dist, r_inner);
    const GroupElement b = inner.vertices[draw(rng, inner.vertices.size())];

    const DirectedBall outer = build_ball(center, dist, r_outer);
    Region region_union;
    const bool use_union = draw(rng, 10) < 3;
    DirectedBall side;
    if (use_union) {
      const GroupElement c =
          multiply(center, ctx.generators[draw(rng, ctx.generators.size())].second);
      side = build_ball(c, dist, std::max(1, r_outer - 1));
      region_union = build_union({&outer, &side}, dist);
    }
    const Region& outer_region = use_union ? region_union : static_cast<const Region&>(outer);

    const auto rep = verify_monotonicity<Rational>(inner, outer_region, center, b);
    if (!rep.holds) {
      failed[i] = true;
      failures[i] = {{"instance", i},
                     {"r_inner", r_inner},
                     {"r_outer", r_outer},
                     {"union", use_union},
                     {"a", format_element(center)},
                     {"b", format_element(b)},
                     {"eps_inner", rational_str(rep.inner.value)},
                     {"eps_outer", rational_str(rep.outer.value)}};
    }
  });
  for (int i = 0; i < instances; ++i) {
    if (failed[i]) result.failures.push_back(failures[i]);
  }
  return result;
}

SuiteResult fn_invariant_suite(const GroupContext& ctx, const StepDistribution& dist,
                               int instances, int max_radius, uint64_t seed) {
  SuiteResult result;
  result.lemma = "harmonic-construction";
  result.family = ctx.fam.str();
  result.params = {{"instances", instances}, {"max_radius", max_radius}, {"seed", seed}};
  result.instances = instances;

  std::vector<json> failures(instances);
  std::vector<bool> failed(instances, false);

  run_indexed(instances, failed, failures, [&](int i) {
    SplitMix64 rng(walk_seed(seed, 0x666e00 + static_cast<uint64_t>(i)));
    const int r = 1 + static_cast<int>(draw(rng, max_radius));
    const DirectedBall ball = build_ball(ctx.identity, dist, r);
    const auto em = exit_measure<Rational>(ball);
    const int32_t a = 0;
    const int32_t b = static_cast<int32_t>(draw(rng, ball.vertices.size()));

    const auto xn_opt = select_extremal_boundary(em, a, b);
    const int32_t xn = xn_opt.value_or(0);
    const auto f = build_fn(em, a, xn);

    std::string why;
    if (!(f.interior[a] == Rational(1))) why = "f(a) != 1";
    if (why.empty()) {
      const auto reach = reaches_target(ball, xn);
      for (int32_t v = 0; v < ball.interior_count() && why.empty(); ++v) {
        if (f.interior[v] < 0) why = "negative value";
        if (reach[v] && !(f.interior[v] > 0)) why = "zero on a vertex that reaches x_n";
        if (!reach[v] && !(f.interior[v] == 0)) why = "positive where x_n is unreachable";
      }
    }
    if (why.empty() && !(harmonicity_residual(f) == Rational(0))) why = "harmonicity residual";
    if (why.empty()) {
      for (int32_t v = 0; v < ball.interior_count() && why.empty(); ++v) {
        if (!(optional_stopping_residual(f, em, v) == Rational(0))) {
          why = "optional stopping residual at v=" + std::to_string(v);
        }
      }
    }
    if (!why.empty()) {
      failed[i] = true;
      failures[i] = {{"instance", i},
                     {"r", r},
                     {"b", format_element(ball.vertices[b])},
                     {"x_n", format_element(ball.boundary[xn])},
                     {"reason", why}};
    }
  });
  for (int i = 0; i < instances; ++i) {
    if (failed[i]) result.failures.push_back(failures[i]);
  }
  return result;
}

SuiteResult telescoping_suite(const GroupContext& ctx, const StepDistribution& dist,
                              int max_radius, const BallCache* cache) {
  SuiteResult result;
  result.lemma = "telescoping-ratio-chain";
  result.family = ctx.fam.str();
  result.params = {{"max_radius", max_radius}};

  OneStepEpsilonTable table(ctx, dist, cache);
  int instances = 0;
  for (int r = 1; r <= max_radius; ++r) {
    const DirectedBall& ball = table.ball_at(r);
    const SparseLU<Rational>& lu = table.lu_at(r);
    for (int32_t x = 0; x < ball.boundary_count(); ++x) {
      const std::vector<Rational> column = exit_column(ball, lu, x);
      const auto trace = geodesic_ratio_trace(ball, column, x, table);
      ++instances;
      if (!trace.telescopes || !trace.all_within) {
        json steps = json::array();
        for (const auto& s : trace.steps) {
          steps.push_back({{"ratio", rational_str(s.ratio)},
                           {"bound", rational_str(s.bound)},
                           {"within", s.within_bound}});
        }
        result.failures.push_back({{"r", r},
                                   {"x", format_element(ball.boundary[x])},
                                   {"telescopes", trace.telescopes},
                                   {"steps", steps}});
      }
    }
  }
  result.instances = instances;
  return result;
}

SuiteResult mc_crosscheck_suite(const GroupContext& ctx, const StepDistribution& dist, int radius,
                                const GroupElement& start, uint64_t samples, uint64_t seed) {
  SuiteResult result;
  result.lemma = "mc-crosscheck";
  result.family = ctx.fam.str();
  result.params = {{"radius", radius}, {"samples", samples}, {"seed", seed}};
  result.instances = 1;

  const DirectedBall ball = build_ball(ctx.identity, dist, radius);
  const int32_t start_idx = ball.interior_index(start);
  if (start_idx < 0) throw std::invalid_argument("mc crosscheck: start not interior");

  const SparseLU<Rational> lu = factor_region<Rational>(ball);
  const std::vector<Rational> row = exit_row(ball, lu, start_idx);
  std::vector<double> row_d(row.size());
  for (size_t i = 0; i < row.size(); ++i) row_d[i] = row[i].get_d();

  const EmpiricalExitMeasure emp = sample_exit(ball, start_idx, samples, seed);
  const EmpiricalExitMeasure rerun = sample_exit(ball, start_idx, samples, seed);
  const McCompare cmp = compare_counts(emp, row_d);

  result.params["z_max"] = cmp.z_max;
  result.params["total_variation"] = cmp.total_variation;
  result.params["max_abs_diff"] = cmp.max_abs_diff;
  result.params["cap_hits"] = emp.cap_hits;

  if (!emp.valid()) result.failures.push_back({{"reason", "step cap hit"}});
  if (cmp.z_max >= 5.0) result.failures.push_back({{"reason", "z_max >= 5"}, {"z_max", cmp.z_max}});
  if (cmp.total_variation >= 0.01) {
    result.failures.push_back({{"reason", "TV >= 0.01"}, {"tv", cmp.total_variation}});
  }
  if (emp.counts != rerun.counts || emp.cap_hits != rerun.cap_hits) {
    result.failures.push_back({{"reason", "same-seed rerun differs"}});
  }
  return result;
}

}  // namespace harmlab

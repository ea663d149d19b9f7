#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "harmlab/harmonic.hpp"
#include "harmlab/walk_sim.hpp"

namespace harmlab {

/// Outcome of one randomized or exhaustive verifier suite. Serializes to
/// {lemma, family, params, instances, failures:[...]}; an empty failure
/// list means the property held on every instance.
struct SuiteResult {
  std::string lemma;
  std::string family;
  nlohmann::json params;
  int instances = 0;
  std::vector<nlohmann::json> failures;

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// Lemma "epsilon(B) <= epsilon(A)" on randomized nested pairs A inside B
/// (balls and ball unions, random centers and base pairs), all exact.
SuiteResult lemma2_suite(const GroupContext& ctx, const StepDistribution& dist, int instances,
                         int max_radius, uint64_t seed);

/// Builds f_n = mu(., x_n)/mu(a, x_n) on randomized balls and checks, all
/// exactly: f_n(a) = 1, nonnegativity, strict positivity exactly on the
/// set of vertices that reach x_n inside the ball, zero harmonicity
/// residual, and zero optional-stopping residual at every interior vertex.
SuiteResult fn_invariant_suite(const GroupContext& ctx, const StepDistribution& dist,
                               int instances, int max_radius, uint64_t seed);

/// Exact telescoping along every boundary geodesic of every identity ball
/// up to max_radius: the ratio product equals mu(a,x) and every
/// |ratio - 1| obeys the recentered one-step epsilon bound.
SuiteResult telescoping_suite(const GroupContext& ctx, const StepDistribution& dist,
                              int max_radius, const BallCache* cache = nullptr);

/// Monte Carlo against the exact solver: z_max < 5, TV < 0.01, no step-cap
/// hits, and a same-seed rerun must be bit-identical.
SuiteResult mc_crosscheck_suite(const GroupContext& ctx, const StepDistribution& dist, int radius,
                                const GroupElement& start, uint64_t samples, uint64_t seed);

}  // namespace harmlab

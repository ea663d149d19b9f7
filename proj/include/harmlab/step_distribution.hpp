#pragma once

#include <vector>

#include "harmlab/groups.hpp"
#include "harmlab/rational.hpp"

namespace harmlab {

/// Finitely supported step law of the chain: the walk moves g -> g*s with
/// probability p(s). Probabilities are exact rationals, strictly positive,
/// and sum to exactly 1. min_prob is the smallest listed probability (the
/// quantity p in the growth bound).
struct StepDistribution {
  std::vector<std::pair<GroupElement, Rational>> steps;
  Rational min_prob;

  size_t size() const { return steps.size(); }
};

/// Uniform law on the context's declared generators.
StepDistribution uniform_steps(const GroupContext& ctx);

/// Step law with explicit probabilities, one per declared generator in
/// order. Validates positivity, exact sum 1 and distinct support, and runs
/// the connectedness certificate. Throws std::invalid_argument.
StepDistribution make_steps(const GroupContext& ctx, const std::vector<Rational>& probs);

/// Certificate that the support generates the group as a semigroup: the
/// inverse of every support element must appear as a product of support
/// elements within the given BFS depth. Throws if any inverse is not
/// found (the chain could fail to be strongly connected).
void check_strong_connectedness(const GroupContext& ctx, const StepDistribution& dist,
                                int max_depth = 16);

}  // namespace harmlab

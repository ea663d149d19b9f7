#include "harmlab/step_distribution.hpp"

#include <stdexcept>
#include <unordered_set>

namespace harmlab {

namespace {

StepDistribution validate(const GroupContext& ctx,
                          std::vector<std::pair<GroupElement, Rational>> steps) {
  if (steps.empty()) throw std::invalid_argument("empty step support");
  Rational sum = 0;
  Rational min_prob;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  for (const auto& [g, p] : steps) {
    if (!(g.family() == ctx.fam)) throw std::invalid_argument("step generator from wrong family");
    if (p <= 0) throw std::invalid_argument("step probabilities must be positive");
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator in step support");
    sum += p;
    if (min_prob == 0 || p < min_prob) min_prob = p;
  }
  if (sum != 1) throw std::invalid_argument("step probabilities must sum to exactly 1");
  bool has_move = false;
  for (const auto& [g, p] : steps) has_move = has_move || !is_identity(g);
  if (!has_move) throw std::invalid_argument("support must contain a non-identity generator");
  StepDistribution dist{std::move(steps), min_prob};
  check_strong_connectedness(ctx, dist);
  return dist;
}

}  // namespace

StepDistribution uniform_steps(const GroupContext& ctx) {
  const size_t n = ctx.generators.size();
  std::vector<std::pair<GroupElement, Rational>> steps;
  steps.reserve(n);
  const Rational p = Rational(1) / Rational(static_cast<long>(n));
  for (const auto& [name, g] : ctx.generators) steps.emplace_back(g, p);
  return validate(ctx, std::move(steps));
}

StepDistribution make_steps(const GroupContext& ctx, const std::vector<Rational>& probs) {
  if (probs.size() != ctx.generators.size()) {
    throw std::invalid_argument("need one probability per declared generator");
  }
  std::vector<std::pair<GroupElement, Rational>> steps;
  steps.reserve(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) steps.emplace_back(ctx.generators[i].second, probs[i]);
  return validate(ctx, std::move(steps));
}

void check_strong_connectedness(const GroupContext& ctx, const StepDistribution& dist,
                                int max_depth) {
  // BFS over the semigroup generated by the support, looking for every
  // support element's inverse. Finding all of them certifies that the
  // semigroup contains the whole group generated by the support.
  std::unordered_set<GroupElement, GroupElementHash> targets;
  for (const auto& [g, p] : dist.steps) {
    const GroupElement gi = invert(g);
    if (!is_identity(multiply(g, gi))) throw std::logic_error("invert is broken");
    targets.insert(gi);
  }
  std::unordered_set<GroupElement, GroupElementHash> visited;
  std::vector<GroupElement> frontier{ctx.identity};
  visited.insert(ctx.identity);
  targets.erase(ctx.identity);
  for (int depth = 0; depth < max_depth && !targets.empty(); ++depth) {
    std::vector<GroupElement> next;
    for (const auto& v : frontier) {
      for (const auto& [s, p] : dist.steps) {
        GroupElement w = multiply(v, s);
        targets.erase(w);
        if (visited.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  if (!targets.empty()) {
    throw std::invalid_argument(
        "support not certified strongly connected for " + ctx.fam.str() +
        ": no short product yields the inverse of some generator");
  }
}

}  // namespace harmlab

#include "harmlab/scan.hpp"

#include <stdexcept>

namespace harmlab {

ModePolicy parse_mode_policy(const std::string& s) {
  if (s == "exact") return ModePolicy::exact;
  if (s == "float") return ModePolicy::floating;
  if (s == "auto" || s.empty()) return ModePolicy::automatic;
  throw std::invalid_argument("mode must be exact, float or auto; got '" + s + "'");
}

const char* mode_policy_name(ModePolicy p) {
  switch (p) {
    case ModePolicy::exact: return "exact";
    case ModePolicy::floating: return "float";
    case ModePolicy::automatic: return "auto";
  }
  return "?";
}

namespace {

template <class S>
EpsilonScanEntry entry_from_report(const DirectedBall& ball, int r, const EpsilonReport<S>& rep) {
  EpsilonScanEntry entry;
  entry.r = r;
  entry.mode = ScalarTraits<S>::mode;
  if constexpr (ScalarTraits<S>::mode == Mode::exact) {
    entry.eps_exact = rep.value;
    entry.eps_float = rep.value.get_d();
  } else {
    entry.eps_float = rep.value;
  }
  entry.argmax_boundary = rep.argmax_boundary;
  entry.excluded_mass_count = rep.excluded_mass_count;
  if (entry.argmax_boundary >= 0) {
    entry.argmax_element = format_element(ball.boundary[entry.argmax_boundary]);
  }
  return entry;
}

}  // namespace

std::vector<EpsilonScanPair> epsilon_scan_both(const GroupElement& a, const GroupElement& b,
                                               const StepDistribution& dist, int r_min, int r_max,
                                               ModePolicy policy, int32_t exact_limit,
                                               const BallCache* cache, size_t vertex_cap) {
  if (r_min < 1 || r_min > r_max) throw std::invalid_argument("epsilon_scan: bad radius range");
  {
    const DirectedBall smallest =
        cache ? cache->get_or_build(a, dist, r_min, vertex_cap) : build_ball(a, dist, r_min, vertex_cap);
    if (smallest.interior_index(b) < 0) {
      throw std::invalid_argument("epsilon_scan: b must lie in B(a, r_min)");
    }
  }

  const int count = r_max - r_min + 1;
  std::vector<EpsilonScanPair> entries(count);
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      const int r = r_min + i;
      const DirectedBall ball =
          cache ? cache->get_or_build(a, dist, r, vertex_cap) : build_ball(a, dist, r, vertex_cap);
      const int32_t ai = 0;
      const int32_t bi = ball.interior_index(b);

      const bool exact = policy == ModePolicy::exact ||
                         (policy == ModePolicy::automatic && ball.interior_count() <= exact_limit);
      EpsilonScanPair pair;
      if (exact) {
        if (ball.interior_count() > exact_limit) {
          throw CapExceeded("exact scan at r=" + std::to_string(r) + " exceeds the interior limit",
                            r);
        }
        const SparseLU<Rational> lu = factor_region<Rational>(ball);
        const std::vector<Rational> row_a = exit_row(ball, lu, ai);
        const std::vector<Rational> row_b = exit_row(ball, lu, bi);
        pair.forward = entry_from_report(ball, r, epsilon_from_rows(row_a, row_b));
        pair.reverse = entry_from_report(ball, r, epsilon_from_rows(row_b, row_a));
      } else {
        const SparseLU<double> lu = factor_region<double>(ball);
        const std::vector<double> row_a = exit_row(ball, lu, ai);
        const std::vector<double> row_b = exit_row(ball, lu, bi);
        pair.forward = entry_from_report(ball, r, epsilon_from_rows(row_a, row_b));
        pair.reverse = entry_from_report(ball, r, epsilon_from_rows(row_b, row_a));
      }
      entries[i] = std::move(pair);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return entries;
}

std::vector<EpsilonScanEntry> epsilon_scan(const GroupElement& a, const GroupElement& b,
                                           const StepDistribution& dist, int r_min, int r_max,
                                           ModePolicy policy, int32_t exact_limit,
                                           const BallCache* cache, size_t vertex_cap) {
  const auto both =
      epsilon_scan_both(a, b, dist, r_min, r_max, policy, exact_limit, cache, vertex_cap);
  std::vector<EpsilonScanEntry> out;
  out.reserve(both.size());
  for (const auto& pair : both) out.push_back(pair.forward);
  return out;
}

}  // namespace harmlab

#pragma once

#include "harmlab/ball_cache.hpp"
#include "harmlab/exit_solver.hpp"

namespace harmlab {

enum class ModePolicy { exact, floating, automatic };

ModePolicy parse_mode_policy(const std::string& s);  // "exact" | "float" | "auto"
const char* mode_policy_name(ModePolicy p);

struct EpsilonScanEntry {
  int r = 0;
  Mode mode = Mode::exact;
  Rational eps_exact;      // meaningful when mode == exact
  double eps_float = 0.0;  // always filled (exact entries converted)
  int32_t argmax_boundary = -1;
  std::string argmax_element;
  int64_t excluded_mass_count = 0;
};

/// epsilon(B(a,r); a, b) for r in [r_min, r_max]. Balls are centered at a,
/// so the maximum never excludes boundary mass. Exact arithmetic is used
/// under the automatic policy while the interior stays within exact_limit,
/// float beyond; radii are solved independently (and may run in parallel).
/// Requires b inside B(a, r_min).
std::vector<EpsilonScanEntry> epsilon_scan(const GroupElement& a, const GroupElement& b,
                                           const StepDistribution& dist, int r_min, int r_max,
                                           ModePolicy policy = ModePolicy::automatic,
                                           int32_t exact_limit = kDefaultExactInteriorLimit,
                                           const BallCache* cache = nullptr,
                                           size_t vertex_cap = kDefaultVertexCap);

/// epsilon is not symmetric in its base pair; experiment outputs carry
/// both orders, computed on the same ball B(a, r). The reverse order has
/// base b, so its maximum may exclude boundary mass (counted, not folded).
struct EpsilonScanPair {
  EpsilonScanEntry forward;  // epsilon(B(a,r); a, b)
  EpsilonScanEntry reverse;  // epsilon(B(a,r); b, a)
};

std::vector<EpsilonScanPair> epsilon_scan_both(const GroupElement& a, const GroupElement& b,
                                               const StepDistribution& dist, int r_min, int r_max,
                                               ModePolicy policy = ModePolicy::automatic,
                                               int32_t exact_limit = kDefaultExactInteriorLimit,
                                               const BallCache* cache = nullptr,
                                               size_t vertex_cap = kDefaultVertexCap);

}  // namespace harmlab

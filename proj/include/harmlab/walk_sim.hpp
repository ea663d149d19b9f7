#pragma once

#include <cstdint>

#include "harmlab/exit_solver.hpp"

namespace harmlab {

/// SplitMix64. Tiny, seedable, identical output on every platform; used
/// for all Monte Carlo sampling. Per-walk streams are derived by mixing
/// the run seed with the walk index (see walk_seed), so results do not
/// depend on thread scheduling.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline uint64_t walk_seed(uint64_t run_seed, uint64_t walk_index) {
  SplitMix64 g(run_seed ^ (0x9E3779B97F4A7C15ull * (walk_index + 1)));
  return g.next();
}

/// Walks are aborted (and flagged) after this many steps; exits from
/// desk-scale balls take far fewer, so any hit indicates a bug.
constexpr uint64_t kWalkStepCap = 1'000'000;

struct EmpiricalExitMeasure {
  const Region* region = nullptr;
  int32_t start = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> counts;  // per boundary vertex
  uint64_t cap_hits = 0;         // must be 0 for a run to be accepted

  bool valid() const { return cap_hits == 0; }
};

/// N independent walks from `start`, each stepping by the region's edge
/// probabilities until it leaves the interior. Deterministic given the
/// seed, independent of thread count.
EmpiricalExitMeasure sample_exit(const Region& region, int32_t start, uint64_t n_samples,
                                 uint64_t seed);

/// Serial reference implementation; must produce bit-identical counts.
EmpiricalExitMeasure sample_exit_serial(const Region& region, int32_t start, uint64_t n_samples,
                                        uint64_t seed);

struct McCompare {
  double max_abs_diff = 0.0;
  double total_variation = 0.0;
  double z_max = 0.0;  // over boundary vertices with mu >= 10/N
};

McCompare compare_counts(const EmpiricalExitMeasure& emp, const std::vector<double>& exact_row);

template <class S>
McCompare compare_to_exact(const EmpiricalExitMeasure& emp, const ExitMeasure<S>& em) {
  if (emp.region != &em.region()) {
    throw std::invalid_argument("compare_to_exact: mismatched regions");
  }
  std::vector<double> row(em.boundary_count());
  for (int32_t x = 0; x < em.boundary_count(); ++x) {
    if constexpr (ScalarTraits<S>::mode == Mode::exact) {
      row[x] = em.value(emp.start, x).get_d();
    } else {
      row[x] = em.value(emp.start, x);
    }
  }
  return compare_counts(emp, row);
}

}  // namespace harmlab

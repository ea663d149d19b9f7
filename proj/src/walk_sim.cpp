#include "harmlab/walk_sim.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace harmlab {

namespace {

// Flattened per-vertex sampling tables: cumulative 64-bit thresholds over
// the out-edges (interior and boundary together, declared edge order) and
// the encoded targets (interior index, or n + boundary index).
struct WalkTable {
  int32_t interior = 0;
  std::vector<std::vector<uint64_t>> thresholds;
  std::vector<std::vector<int32_t>> targets;
};

WalkTable build_table(const Region& region) {
  WalkTable t;
  t.interior = region.interior_count();
  t.thresholds.resize(t.interior);
  t.targets.resize(t.interior);
  for (int32_t v = 0; v < t.interior; ++v) {
    Rational cum = 0;
    for (const auto& [w, p] : region.edges_int[v]) {
      cum += p;
      t.thresholds[v].push_back(floor_scale_2_64(cum));
      t.targets[v].push_back(w);
    }
    for (const auto& [x, p] : region.edges_bd[v]) {
      cum += p;
      t.thresholds[v].push_back(floor_scale_2_64(cum));
      t.targets[v].push_back(t.interior + x);
    }
  }
  return t;
}

// Runs one walk; returns the boundary index or -1 on a cap hit.
inline int32_t run_walk(const WalkTable& t, int32_t start, uint64_t seed) {
  SplitMix64 rng(seed);
  int32_t pos = start;
  for (uint64_t step = 0; step < kWalkStepCap; ++step) {
    const uint64_t u = rng.next();
    const auto& th = t.thresholds[pos];
    const auto& tg = t.targets[pos];
    size_t j = 0;
    while (j + 1 < th.size() && u >= th[j]) ++j;
    const int32_t target = tg[j];
    if (target >= t.interior) return target - t.interior;
    pos = target;
  }
  return -1;
}

EmpiricalExitMeasure sample_impl(const Region& region, int32_t start, uint64_t n_samples,
                                 uint64_t seed, bool parallel) {
  if (start < 0 || start >= region.interior_count()) {
    throw std::invalid_argument("sample_exit: start must be interior");
  }
  if (n_samples < 1) throw std::invalid_argument("sample_exit: need at least one walk");
  const WalkTable table = build_table(region);

  EmpiricalExitMeasure emp;
  emp.region = &region;
  emp.start = start;
  emp.samples = n_samples;
  emp.seed = seed;
  emp.counts.assign(region.boundary_count(), 0);

  const int64_t n = static_cast<int64_t>(n_samples);
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<uint64_t> local(emp.counts.size(), 0);
      uint64_t local_caps = 0;
#pragma omp for schedule(static)
      for (int64_t i = 0; i < n; ++i) {
        const int32_t exit = run_walk(table, start, walk_seed(seed, static_cast<uint64_t>(i)));
        if (exit < 0) {
          ++local_caps;
        } else {
          ++local[exit];
        }
      }
#pragma omp critical
      {
        for (size_t x = 0; x < local.size(); ++x) emp.counts[x] += local[x];
        emp.cap_hits += local_caps;
      }
    }
    return emp;
#endif
  }
  for (int64_t i = 0; i < n; ++i) {
    const int32_t exit = run_walk(table, start, walk_seed(seed, static_cast<uint64_t>(i)));
    if (exit < 0) {
      ++emp.cap_hits;
    } else {
      ++emp.counts[exit];
    }
  }
  return emp;
}

}  // namespace

EmpiricalExitMeasure sample_exit(const Region& region, int32_t start, uint64_t n_samples,
                                 uint64_t seed) {
  return sample_impl(region, start, n_samples, seed, true);
}

EmpiricalExitMeasure sample_exit_serial(const Region& region, int32_t start, uint64_t n_samples,
                                        uint64_t seed) {
  return sample_impl(region, start, n_samples, seed, false);
}

McCompare compare_counts(const EmpiricalExitMeasure& emp, const std::vector<double>& exact_row) {
  if (exact_row.size() != emp.counts.size()) {
    throw std::invalid_argument("compare_counts: boundary size mismatch");
  }
  McCompare out;
  const double n = static_cast<double>(emp.samples);
  double tv = 0.0;
  for (size_t x = 0; x < exact_row.size(); ++x) {
    const double mu = exact_row[x];
    const double freq = static_cast<double>(emp.counts[x]) / n;
    const double diff = std::fabs(freq - mu);
    tv += diff;
    if (diff > out.max_abs_diff) out.max_abs_diff = diff;
    if (mu * n >= 10.0) {
      const double z = diff / std::sqrt(mu * (1.0 - mu) / n);
      if (z > out.z_max) out.z_max = z;
    }
  }
  out.total_variation = tv / 2.0;
  return out;
}

}  // namespace harmlab

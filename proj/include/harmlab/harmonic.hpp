#pragma once

#include <map>
#include <memory>
#include <optional>

#include "harmlab/ball_cache.hpp"
#include "harmlab/exit_solver.hpp"

namespace harmlab {

/// The approximate positive harmonic function
///   f(v) = mu_S(v, x_n) / mu_S(a, x_n)
/// on S union dS, with f on the boundary the indicator of x_n scaled by
/// 1/mu_S(a, x_n). Defined only on S union dS; nothing is extended
/// outside. f(a) = 1 exactly and f is exactly harmonic at every interior
/// vertex in exact mode.
template <class S>
struct HarmonicApprox {
  const Region* region = nullptr;
  int32_t base = -1;    // interior index of a
  int32_t target = -1;  // boundary index of x_n
  std::vector<S> interior;
  std::vector<S> boundary;
};

/// Boundary vertex maximizing |mu(a,x)-mu(b,x)|/mu(a,x) over mu(a,x) > 0,
/// smallest index on ties; nullopt when the measures agree there.
template <class S>
std::optional<int32_t> select_extremal_boundary(const ExitMeasure<S>& em, int32_t a, int32_t b) {
  const EpsilonReport<S> rep = epsilon(em, a, b);
  if (rep.identical()) return std::nullopt;
  return rep.argmax_boundary;
}

template <class S>
HarmonicApprox<S> build_fn_from_column(const Region& region, std::vector<S> column, int32_t a,
                                       int32_t xn) {
  if (a < 0 || a >= region.interior_count()) {
    throw std::invalid_argument("build_fn: base vertex must be interior");
  }
  if (xn < 0 || xn >= region.boundary_count()) {
    throw std::invalid_argument("build_fn: target must be a boundary vertex");
  }
  if (!(column[a] > S(0))) {
    throw std::invalid_argument("build_fn: mu(a, x_n) must be positive");
  }
  HarmonicApprox<S> f;
  f.region = &region;
  f.base = a;
  f.target = xn;
  const S norm = column[a];
  f.interior = std::move(column);
  for (auto& v : f.interior) v /= norm;
  f.boundary.assign(region.boundary_count(), S(0));
  f.boundary[xn] = S(1) / norm;
  return f;
}

template <class S>
HarmonicApprox<S> build_fn(const ExitMeasure<S>& em, int32_t a, int32_t xn) {
  if (xn < 0 || xn >= em.boundary_count()) {
    throw std::invalid_argument("build_fn: target must be a boundary vertex");
  }
  std::vector<S> column(em.interior_count());
  for (int32_t v = 0; v < em.interior_count(); ++v) column[v] = em.value(v, xn);
  return build_fn_from_column(em.region(), std::move(column), a, xn);
}

/// max over interior v of |f(v) - sum_s p(s) f(v s)|; every v s lies in
/// S union dS, so the sum is fully determined. Exactly 0 for f built from
/// an exit measure in exact mode.
template <class S>
S harmonicity_residual(const HarmonicApprox<S>& f) {
  const Region& region = *f.region;
  S worst(0);
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    S acc(0);
    for (const auto& [w, p] : region.edges_int[v]) {
      acc += ScalarTraits<S>::from_rational(p) * f.interior[w];
    }
    for (const auto& [x, p] : region.edges_bd[v]) {
      acc += ScalarTraits<S>::from_rational(p) * f.boundary[x];
    }
    S err = ScalarTraits<S>::abs(f.interior[v] - acc);
    if (err > worst) worst = err;
  }
  return worst;
}

/// Optional-stopping identity at v: |f(v) - sum_x mu(v,x) f(x)|.
template <class S>
S optional_stopping_residual(const HarmonicApprox<S>& f, const ExitMeasure<S>& em, int32_t v) {
  if (f.region != &em.region()) {
    throw std::invalid_argument("optional stopping: f is not defined on em's region");
  }
  if (v < 0 || v >= em.interior_count()) {
    throw std::invalid_argument("optional stopping: v must be interior");
  }
  S acc(0);
  for (int32_t x = 0; x < em.boundary_count(); ++x) acc += em.value(v, x) * f.boundary[x];
  return ScalarTraits<S>::abs(f.interior[v] - acc);
}

// --- Lemma 2: monotonicity of epsilon under set inclusion ----------------

template <class S>
struct MonotonicityReport {
  EpsilonReport<S> inner;  // epsilon(A; a, b)
  EpsilonReport<S> outer;  // epsilon(B; a, b)
  bool holds = false;      // epsilon(B) <= epsilon(A)
};

/// Requires every interior vertex of A to be interior in B and a, b
/// interior in A. A violation of the conclusion indicates a solver bug.
template <class S>
MonotonicityReport<S> verify_monotonicity(const Region& inner_region, const Region& outer_region,
                                          const GroupElement& a, const GroupElement& b) {
  for (const auto& v : inner_region.vertices) {
    if (outer_region.interior_index(v) < 0) {
      throw std::invalid_argument("monotonicity: A is not contained in B's interior");
    }
  }
  const int32_t a_in = inner_region.interior_index(a);
  const int32_t b_in = inner_region.interior_index(b);
  if (a_in < 0 || b_in < 0) {
    throw std::invalid_argument("monotonicity: a and b must be interior in A");
  }
  MonotonicityReport<S> rep;
  {
    const SparseLU<S> lu = factor_region<S>(inner_region);
    rep.inner = epsilon_pair(inner_region, lu, a_in, b_in);
  }
  {
    const SparseLU<S> lu = factor_region<S>(outer_region);
    rep.outer =
        epsilon_pair(outer_region, lu, outer_region.interior_index(a), outer_region.interior_index(b));
  }
  rep.holds = !(rep.outer.value > rep.inner.value);
  return rep;
}

// --- one-step epsilon table ----------------------------------------------

/// epsilon(B(e, rho); e, s) for generators s, the quantity the growth
/// bound quantifies over. Balls are centered at the identity; by
/// translation invariance this covers every one-step pair. For rho = 0
/// the pair's second vertex lies on the boundary and the convention
/// mu_S(x, y) = [y == x] applies.
class OneStepEpsilonTable {
 public:
  OneStepEpsilonTable(const GroupContext& ctx, const StepDistribution& dist,
                      const BallCache* cache = nullptr)
      : ctx_(ctx), dist_(dist), cache_(cache) {}

  Rational eps(int radius, const GroupElement& s);

  /// max over the step support.
  Rational max_eps(int radius);

  // Shared access to the identity balls the table builds along the way.
  const DirectedBall& ball_at(int radius);
  const SparseLU<Rational>& lu_at(int radius);
  const std::vector<Rational>& center_row_at(int radius);

 private:
  struct Level {
    std::shared_ptr<DirectedBall> ball;
    std::shared_ptr<SparseLU<Rational>> lu;
    std::vector<Rational> center_row;
    std::map<std::string, Rational> by_generator;
  };
  Level& level(int radius);

  const GroupContext& ctx_;
  const StepDistribution& dist_;
  const BallCache* cache_;
  std::map<int, Level> levels_;
};

// --- telescoping geodesic ratios ------------------------------------------

/// One multiplicative step of the telescoping identity along a geodesic.
template <class S>
struct RatioStep {
  S ratio;           // mu(g_i, x) / mu(g_{i+1}, x), with mu(x, x) = 1
  S deviation;       // |ratio - 1|
  S bound;           // translated one-step epsilon at radius r - i
  bool within_bound;
};

template <class S>
struct TraceReport {
  int32_t boundary_index = -1;
  std::vector<RatioStep<S>> steps;
  S product{};
  S mu_center{};
  bool telescopes = false;   // product == mu(a, x)
  bool all_within = false;   // every deviation <= its bound
};

/// Traces mu(a,x) = prod_i mu(g_i,x)/mu(g_{i+1},x) along the BFS geodesic
/// to boundary vertex x and checks each ratio against the recentered
/// one-step epsilon bound. Throws if some intermediate mu vanishes (cannot
/// happen for geodesics from the center).
TraceReport<Rational> geodesic_ratio_trace(const DirectedBall& ball,
                                           const std::vector<Rational>& target_column,
                                           int32_t boundary_idx, OneStepEpsilonTable& table);

// --- growth certificate ----------------------------------------------------

/// Per-radius record of the growth-bound chain: if every one-step epsilon
/// at radii in (r0, r] is at most delta, then
///   min_x mu_{B(a,r)}(a,x) >= (1-delta)^(r-r0) p^r0   and
///   |dB(a,r)| <= (1-delta)^(r0-r) p^-r0.
struct CertificateRow {
  int r = 0;
  Rational one_step_eps_at_r;  // max over generators at this radius
  Rational max_eps_so_far;     // max over radii in (r0, r]
  bool premise_holds = false;
  Rational bound;
  Rational min_mu;
  int64_t boundary_size = 0;
  bool min_mu_ok = false;
  bool boundary_ok = false;
  bool conclusion_holds = false;  // premise_holds && both inequalities
};

struct GrowthCertificate {
  Rational delta;
  int r0 = 1;
  Rational min_step_prob;
  std::vector<CertificateRow> rows;

  bool premise_everywhere() const;
  bool coherent() const;  // conclusion holds wherever the premise does
};

GrowthCertificate growth_certificate(const GroupContext& ctx, const StepDistribution& dist,
                                     const Rational& delta, int r0, int s_max,
                                     const BallCache* cache = nullptr);

}  // namespace harmlab

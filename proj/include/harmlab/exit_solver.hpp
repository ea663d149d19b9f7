#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <vector>

#include "harmlab/ball.hpp"
#include "harmlab/sparse_lu.hpp"

namespace harmlab {

enum class Mode { exact, floating };

inline const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::exact;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
};

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::floating;
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double abs(double x) { return std::fabs(x); }
};

/// Exact solves refuse regions above this interior size; callers fall back
/// to float mode.
constexpr int32_t kDefaultExactInteriorLimit = 20'000;

template <class S>
SparseLU<S> factor_region(const Region& region) {
  if (region.boundary_count() == 0) {
    throw std::invalid_argument("region has no boundary; exit is impossible");
  }
  return SparseLU<S>::factor(region,
                             [](const Rational& q) { return ScalarTraits<S>::from_rational(q); });
}

namespace detail_solver {

// rhs column for boundary vertex x: rhs[v] = p(v -> x).
template <class S>
std::vector<S> boundary_rhs(const Region& region, int32_t x) {
  std::vector<S> rhs(region.interior_count(), S(0));
  for (int32_t v : region.boundary_preds[x]) {
    for (const auto& [bx, p] : region.edges_bd[v]) {
      if (bx == x) rhs[v] += ScalarTraits<S>::from_rational(p);
    }
  }
  return rhs;
}

// residual r = b - (I - Q) x, used by float-mode iterative refinement.
inline std::vector<double> residual(const Region& region, const std::vector<double>& b,
                                    const std::vector<double>& x) {
  std::vector<double> r(b);
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    double ax = x[v];
    for (const auto& [w, p] : region.edges_int[v]) ax -= p.get_d() * x[w];
    r[v] -= ax;
  }
  return r;
}

inline std::vector<double> residual_transposed(const Region& region, const std::vector<double>& b,
                                               const std::vector<double>& x) {
  std::vector<double> r(b);
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    double ax = x[v];
    r[v] -= ax;  // diagonal
  }
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    for (const auto& [w, p] : region.edges_int[v]) r[w] += p.get_d() * x[v];
  }
  return r;
}

}  // namespace detail_solver

/// Solves one boundary column mu(., x). Float mode runs two rounds of
/// iterative refinement against the exact-rational edge data.
template <class S>
std::vector<S> exit_column(const Region& region, const SparseLU<S>& lu, int32_t x) {
  std::vector<S> rhs = detail_solver::boundary_rhs<S>(region, x);
  std::vector<S> sol = lu.solve(rhs);
  if constexpr (ScalarTraits<S>::mode == Mode::floating) {
    for (int round = 0; round < 2; ++round) {
      std::vector<double> r = detail_solver::residual(region, rhs, sol);
      std::vector<double> dx = lu.solve(r);
      for (size_t i = 0; i < sol.size(); ++i) sol[i] += dx[i];
    }
  }
  return sol;
}

/// Solves one interior row mu(v, .) over all boundary vertices with a
/// single transposed solve.
template <class S>
std::vector<S> exit_row(const Region& region, const SparseLU<S>& lu, int32_t v) {
  std::vector<S> rhs(region.interior_count(), S(0));
  rhs[v] = S(1);
  std::vector<S> y = lu.solve_transposed(rhs);
  if constexpr (ScalarTraits<S>::mode == Mode::floating) {
    for (int round = 0; round < 2; ++round) {
      std::vector<double> r = detail_solver::residual_transposed(region, rhs, y);
      std::vector<double> dy = lu.solve_transposed(r);
      for (size_t i = 0; i < y.size(); ++i) y[i] += dy[i];
    }
  }
  std::vector<S> row(region.boundary_count(), S(0));
  for (int32_t x = 0; x < region.boundary_count(); ++x) {
    S acc(0);
    for (int32_t w : region.boundary_preds[x]) {
      for (const auto& [bx, p] : region.edges_bd[w]) {
        if (bx == x) acc += y[w] * ScalarTraits<S>::from_rational(p);
      }
    }
    row[x] = std::move(acc);
  }
  return row;
}

/// Full exit-measure matrix mu_S(v, x): interior rows, boundary columns.
template <class S>
class ExitMeasure {
 public:
  ExitMeasure(const Region& region, std::vector<std::vector<S>> rows)
      : region_(&region), rows_(std::move(rows)) {}

  static constexpr Mode mode() { return ScalarTraits<S>::mode; }
  const Region& region() const { return *region_; }
  const std::vector<S>& row(int32_t v) const { return rows_[v]; }
  const S& value(int32_t v, int32_t x) const { return rows_[v][x]; }
  int32_t interior_count() const { return static_cast<int32_t>(rows_.size()); }
  int32_t boundary_count() const { return region_->boundary_count(); }

 private:
  const Region* region_;
  std::vector<std::vector<S>> rows_;
};

/// Solves the absorbing-chain system for every boundary column against one
/// factorization. Exact mode is sequential and enforces the interior-size
/// limit; float mode may fan columns out across threads.
template <class S>
ExitMeasure<S> exit_measure(const Region& region,
                            int32_t exact_limit = kDefaultExactInteriorLimit,
                            bool parallel_columns = true);

// Invariant probes used by tests and experiment suites.

/// max_v |sum_x mu(v,x) - 1|; exactly 0 in exact mode.
template <class S>
S max_row_sum_error(const ExitMeasure<S>& em) {
  S worst(0);
  for (int32_t v = 0; v < em.interior_count(); ++v) {
    S sum(0);
    for (int32_t x = 0; x < em.boundary_count(); ++x) sum += em.value(v, x);
    S err = ScalarTraits<S>::abs(sum - S(1));
    if (err > worst) worst = err;
  }
  return worst;
}

/// max over interior v and boundary x of the harmonicity defect
/// |mu(v,x) - sum_w p(v,w) mu'(w,x)| where mu' is the indicator on the
/// boundary. Exactly 0 in exact mode.
template <class S>
S max_harmonicity_error(const ExitMeasure<S>& em) {
  const Region& region = em.region();
  S worst(0);
  for (int32_t v = 0; v < em.interior_count(); ++v) {
    for (int32_t x = 0; x < em.boundary_count(); ++x) {
      S acc(0);
      for (const auto& [w, p] : region.edges_int[v]) {
        acc += ScalarTraits<S>::from_rational(p) * em.value(w, x);
      }
      for (const auto& [bx, p] : region.edges_bd[v]) {
        if (bx == x) acc += ScalarTraits<S>::from_rational(p);
      }
      S err = ScalarTraits<S>::abs(em.value(v, x) - acc);
      if (err > worst) worst = err;
    }
  }
  return worst;
}

template <class S>
bool all_nonnegative(const ExitMeasure<S>& em) {
  for (int32_t v = 0; v < em.interior_count(); ++v) {
    for (int32_t x = 0; x < em.boundary_count(); ++x) {
      if (em.value(v, x) < S(0)) return false;
    }
  }
  return true;
}

/// Center positivity on balls: mu(center, x) > 0 for every boundary x.
template <class S>
bool center_row_positive(const ExitMeasure<S>& em) {
  for (int32_t x = 0; x < em.boundary_count(); ++x) {
    if (!(em.value(0, x) > S(0))) return false;
  }
  return true;
}

// --- the discrepancy epsilon(S; a, b) ------------------------------------

/// Per-pair discrepancy report. The maximum runs over boundary vertices
/// with mu(a,x) > 0, exactly as defined; boundary x with mu(a,x) = 0 but
/// mu(b,x) > 0 are counted separately as excluded mass. argmax ties break
/// to the smallest boundary index; argmax = -1 means the two measures
/// agree on the support of mu(a,.) ("measures identical").
template <class S>
struct EpsilonReport {
  S value{};
  int32_t argmax_boundary = -1;
  std::vector<std::pair<int32_t, S>> discrepancies;
  int64_t excluded_mass_count = 0;

  bool identical() const { return argmax_boundary == -1; }
};

template <class S>
EpsilonReport<S> epsilon_from_rows(const std::vector<S>& row_a, const std::vector<S>& row_b) {
  EpsilonReport<S> rep;
  rep.value = S(0);
  for (int32_t x = 0; x < static_cast<int32_t>(row_a.size()); ++x) {
    if (row_a[x] > S(0)) {
      S d = ScalarTraits<S>::abs(row_a[x] - row_b[x]) / row_a[x];
      if (d > rep.value) {
        rep.value = d;
        rep.argmax_boundary = x;
      }
      rep.discrepancies.emplace_back(x, std::move(d));
    } else if (row_b[x] > S(0)) {
      rep.excluded_mass_count += 1;
    }
  }
  return rep;
}

template <class S>
EpsilonReport<S> epsilon(const ExitMeasure<S>& em, int32_t a, int32_t b) {
  if (a < 0 || a >= em.interior_count() || b < 0 || b >= em.interior_count()) {
    throw std::invalid_argument("epsilon: base vertices must be interior");
  }
  return epsilon_from_rows(em.row(a), em.row(b));
}

/// Same value as epsilon() but from two transposed solves; used when the
/// full matrix would be too large to materialize.
template <class S>
EpsilonReport<S> epsilon_pair(const Region& region, const SparseLU<S>& lu, int32_t a, int32_t b) {
  if (a < 0 || a >= region.interior_count() || b < 0 || b >= region.interior_count()) {
    throw std::invalid_argument("epsilon: base vertices must be interior");
  }
  return epsilon_from_rows(exit_row(region, lu, a), exit_row(region, lu, b));
}

template <class S>
ExitMeasure<S> exit_measure(const Region& region, int32_t exact_limit, bool parallel_columns) {
  if constexpr (ScalarTraits<S>::mode == Mode::exact) {
    if (region.interior_count() > exact_limit) {
      throw CapExceeded("exact solve refused: " + std::to_string(region.interior_count()) +
                        " interior vertices exceed the limit of " + std::to_string(exact_limit) +
                        "; use float mode");
    }
  }
  const SparseLU<S> lu = factor_region<S>(region);
  const int32_t n = region.interior_count();
  const int32_t m = region.boundary_count();
  std::vector<std::vector<S>> cols(m);
  if constexpr (ScalarTraits<S>::mode == Mode::floating) {
    if (parallel_columns) {
#pragma omp parallel for schedule(dynamic)
      for (int32_t x = 0; x < m; ++x) cols[x] = exit_column(region, lu, x);
    } else {
      for (int32_t x = 0; x < m; ++x) cols[x] = exit_column(region, lu, x);
    }
  } else {
    // A single exact solve stays sequential.
    (void)parallel_columns;
    for (int32_t x = 0; x < m; ++x) cols[x] = exit_column(region, lu, x);
  }
  std::vector<std::vector<S>> rows(n);
  for (int32_t v = 0; v < n; ++v) rows[v].resize(m, S(0));
  for (int32_t x = 0; x < m; ++x) {
    for (int32_t v = 0; v < n; ++v) rows[v][x] = std::move(cols[x][v]);
  }
  return ExitMeasure<S>(region, std::move(rows));
}

/// CSV export: (interior_index, boundary_index, numerator, denominator)
/// in exact mode, (interior_index, boundary_index, value) in float mode.
template <class S>
void export_exit_measure_csv(const ExitMeasure<S>& em, std::ostream& os) {
  if constexpr (ScalarTraits<S>::mode == Mode::exact) {
    os << "interior_index,boundary_index,numerator,denominator\n";
    for (int32_t v = 0; v < em.interior_count(); ++v) {
      for (int32_t x = 0; x < em.boundary_count(); ++x) {
        os << v << ',' << x << ',' << num_str(em.value(v, x)) << ',' << den_str(em.value(v, x))
           << '\n';
      }
    }
  } else {
    char buf[32];
    os << "interior_index,boundary_index,value\n";
    for (int32_t v = 0; v < em.interior_count(); ++v) {
      for (int32_t x = 0; x < em.boundary_count(); ++x) {
        std::snprintf(buf, sizeof(buf), "%.17g", em.value(v, x));
        os << v << ',' << x << ',' << buf << '\n';
      }
    }
  }
}

}  // namespace harmlab

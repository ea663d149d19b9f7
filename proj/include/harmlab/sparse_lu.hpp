#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "harmlab/ball.hpp"

namespace harmlab {

/// Sparse LU factorization of (I - Q) over a region's interior, where Q is
/// the interior-to-interior step matrix. Works for exact rationals and for
/// doubles through the same elimination.
///
/// No pivoting: (I - Q) is a nonsingular M-matrix (row sums of Q are at
/// most 1, strictly below 1 on rows with boundary edges), so every pivot
/// stays positive. The elimination order is reverse BFS order, leaf-most
/// vertices first, which keeps fill-in small on ball-shaped systems (and
/// is exactly zero on trees).
template <class S>
class SparseLU {
 public:
  /// rational_to_scalar converts edge probabilities into S.
  template <class Conv>
  static SparseLU factor(const Region& region, Conv&& rational_to_scalar) {
    const int32_t n = region.interior_count();
    SparseLU lu;
    lu.n_ = n;

    // Assemble I - Q in elimination coordinates e = n-1-v.
    std::vector<std::map<int32_t, S>> active(n);
    for (int32_t v = 0; v < n; ++v) {
      const int32_t ev = n - 1 - v;
      active[ev][ev] = S(1);
      for (const auto& [w, p] : region.edges_int[v]) {
        active[ev][n - 1 - w] -= rational_to_scalar(p);
      }
    }
    std::vector<std::vector<int32_t>> rows_in_col(n);
    for (int32_t i = 0; i < n; ++i) {
      for (const auto& [j, val] : active[i]) {
        if (i > j) rows_in_col[j].push_back(i);
      }
    }

    lu.lower_.resize(n);
    lu.upper_.resize(n);
    lu.diag_.resize(n, S(0));
    for (int32_t k = 0; k < n; ++k) {
      auto& row_k = active[k];
      auto pivot_it = row_k.find(k);
      if (pivot_it == row_k.end() || pivot_it->second == S(0)) {
        throw std::logic_error("singular system: zero pivot (is the region connected?)");
      }
      const S pivot = pivot_it->second;
      for (int32_t i : rows_in_col[k]) {
        auto& row_i = active[i];
        auto it = row_i.find(k);
        if (it == row_i.end()) continue;  // filled and cancelled earlier
        S mult = it->second / pivot;
        row_i.erase(it);
        for (auto jt = row_k.upper_bound(k); jt != row_k.end(); ++jt) {
          auto [pos, inserted] = row_i.try_emplace(jt->first, S(0));
          if (inserted && jt->first < i) rows_in_col[jt->first].push_back(i);
          pos->second -= mult * jt->second;
          if (pos->second == S(0)) row_i.erase(pos);
        }
        lu.lower_[i].emplace_back(k, std::move(mult));
      }
      rows_in_col[k].clear();
      lu.diag_[k] = pivot;
      for (auto jt = row_k.upper_bound(k); jt != row_k.end(); ++jt) {
        lu.upper_[k].emplace_back(jt->first, jt->second);
      }
      row_k.clear();
    }
    return lu;
  }

  int32_t size() const { return n_; }

  /// Solves (I - Q) x = b; b indexed by interior vertex.
  std::vector<S> solve(const std::vector<S>& b) const {
    std::vector<S> y = permute(b);
    for (int32_t k = 0; k < n_; ++k) {
      for (const auto& [j, mult] : lower_[k]) y[k] -= mult * y[j];
    }
    for (int32_t k = n_ - 1; k >= 0; --k) {
      for (const auto& [j, val] : upper_[k]) y[k] -= val * y[j];
      y[k] /= diag_[k];
    }
    return permute(y);
  }

  /// Solves (I - Q)^T x = b.
  std::vector<S> solve_transposed(const std::vector<S>& b) const {
    std::vector<S> w = permute(b);
    // U^T w' = w: forward scatter over U rows.
    for (int32_t k = 0; k < n_; ++k) {
      w[k] /= diag_[k];
      for (const auto& [j, val] : upper_[k]) w[j] -= val * w[k];
    }
    // L^T x = w': backward scatter over L rows (unit diagonal).
    for (int32_t k = n_ - 1; k >= 0; --k) {
      for (const auto& [j, mult] : lower_[k]) w[j] -= mult * w[k];
    }
    return permute(w);
  }

 private:
  // The permutation is its own inverse (index reversal).
  std::vector<S> permute(const std::vector<S>& v) const {
    std::vector<S> out(v.size());
    for (int32_t i = 0; i < n_; ++i) out[i] = v[n_ - 1 - i];
    return out;
  }

  int32_t n_ = 0;
  std::vector<std::vector<std::pair<int32_t, S>>> lower_;  // strictly below diagonal
  std::vector<std::vector<std::pair<int32_t, S>>> upper_;  // strictly above diagonal
  std::vector<S> diag_;
};

}  // namespace harmlab

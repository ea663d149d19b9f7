#include "harmlab/ball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harmlab {

int32_t Region::interior_index(const GroupElement& g) const {
  auto it = index_of.find(g);
  return it == index_of.end() ? -1 : it->second;
}

int32_t Region::boundary_index(const GroupElement& g) const {
  auto it = boundary_index_of.find(g);
  return it == boundary_index_of.end() ? -1 : it->second;
}

DirectedBall build_ball(const GroupElement& center, const StepDistribution& dist, int radius,
                        size_t vertex_cap) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  DirectedBall ball;
  ball.center = center;
  ball.radius = radius;
  ball.new_at_dist.assign(static_cast<size_t>(radius) + 2, 0);

  ball.vertices.push_back(center);
  ball.index_of.emplace(center, 0);
  ball.dist.push_back(0);
  ball.geo_pred.push_back(-1);
  ball.new_at_dist[0] = 1;

  // Plain vector as BFS queue: vertices are appended in discovery order,
  // which is exactly the index order.
  for (int32_t v = 0; v < static_cast<int32_t>(ball.vertices.size()); ++v) {
    const int dv = ball.dist[v];
    ball.edges_int.emplace_back();
    ball.edges_bd.emplace_back();
    for (const auto& [s, p] : dist.steps) {
      GroupElement w = multiply(ball.vertices[v], s);
      if (auto it = ball.index_of.find(w); it != ball.index_of.end()) {
        ball.edges_int[v].emplace_back(it->second, p);
        continue;
      }
      if (auto it = ball.boundary_index_of.find(w); it != ball.boundary_index_of.end()) {
        ball.edges_bd[v].emplace_back(it->second, p);
        ball.boundary_preds[it->second].push_back(v);
        continue;
      }
      if (dv < radius) {
        if (ball.vertices.size() + ball.boundary.size() >= vertex_cap) {
          throw CapExceeded("ball vertex cap exceeded for " + center.family().str(), dv);
        }
        const auto idx = static_cast<int32_t>(ball.vertices.size());
        ball.index_of.emplace(w, idx);
        ball.vertices.push_back(std::move(w));
        ball.dist.push_back(dv + 1);
        ball.geo_pred.push_back(v);
        ball.new_at_dist[dv + 1] += 1;
        ball.edges_int[v].emplace_back(idx, p);
      } else {
        if (ball.vertices.size() + ball.boundary.size() >= vertex_cap) {
          throw CapExceeded("ball vertex cap exceeded for " + center.family().str(), dv);
        }
        const auto bidx = static_cast<int32_t>(ball.boundary.size());
        ball.boundary_index_of.emplace(w, bidx);
        ball.boundary.push_back(std::move(w));
        ball.boundary_preds.emplace_back(std::vector<int32_t>{v});
        ball.bd_geo_pred.push_back(v);
        ball.new_at_dist[dv + 1] += 1;
        ball.edges_bd[v].emplace_back(bidx, p);
      }
    }
  }
  return ball;
}

Region build_union(const std::vector<const DirectedBall*>& balls, const StepDistribution& dist) {
  if (balls.empty()) throw std::invalid_argument("empty ball union");
  Region region;
  for (const auto* b : balls) {
    for (const auto& v : b->vertices) {
      if (region.index_of.find(v) == region.index_of.end()) {
        region.index_of.emplace(v, static_cast<int32_t>(region.vertices.size()));
        region.vertices.push_back(v);
      }
    }
  }
  region.edges_int.resize(region.vertices.size());
  region.edges_bd.resize(region.vertices.size());
  for (int32_t v = 0; v < region.interior_count(); ++v) {
    for (const auto& [s, p] : dist.steps) {
      GroupElement w = multiply(region.vertices[v], s);
      if (auto it = region.index_of.find(w); it != region.index_of.end()) {
        region.edges_int[v].emplace_back(it->second, p);
        continue;
      }
      auto it = region.boundary_index_of.find(w);
      int32_t bidx;
      if (it != region.boundary_index_of.end()) {
        bidx = it->second;
      } else {
        bidx = static_cast<int32_t>(region.boundary.size());
        region.boundary_index_of.emplace(w, bidx);
        region.boundary.push_back(std::move(w));
        region.boundary_preds.emplace_back();
      }
      region.edges_bd[v].emplace_back(bidx, p);
      region.boundary_preds[bidx].push_back(v);
    }
  }
  return region;
}

std::vector<int32_t> geodesic_interior_indices(const DirectedBall& ball, int32_t boundary_idx) {
  if (boundary_idx < 0 || boundary_idx >= ball.boundary_count()) {
    throw std::invalid_argument("not a boundary vertex");
  }
  std::vector<int32_t> rev;
  for (int32_t v = ball.bd_geo_pred[boundary_idx]; v != -1; v = ball.geo_pred[v]) rev.push_back(v);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::vector<GroupElement> geodesic(const DirectedBall& ball, const GroupElement& x) {
  const int32_t bidx = ball.boundary_index(x);
  if (bidx < 0) throw std::invalid_argument("vertex is not on the ball boundary");
  std::vector<GroupElement> path;
  for (int32_t v : geodesic_interior_indices(ball, bidx)) path.push_back(ball.vertices[v]);
  path.push_back(ball.boundary[bidx]);
  return path;
}

namespace {

// Least-squares slope and RMS residual of y against x.
struct Fit {
  double slope = 0.0, residual = 0.0;
};

Fit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  Fit f;
  const size_t n = xs.size();
  if (n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = ys[i] - (f.slope * xs[i] + intercept);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace

GrowthProfile growth_profile(const GroupContext& ctx, const StepDistribution& dist, int r_max,
                             size_t vertex_cap) {
  if (r_max < 2) throw std::invalid_argument("growth profile needs r_max >= 2");
  GrowthProfile profile;

  // One BFS to depth r_max covers every radius: |B(a,r)| accumulates the
  // per-distance counts and |dB(a,r)| is the count at distance r+1 (for
  // balls the boundary is exactly the next BFS layer).
  DirectedBall ball;
  int reached = r_max;
  try {
    ball = build_ball(ctx.identity, dist, r_max, vertex_cap);
  } catch (const CapExceeded& e) {
    profile.truncated = true;
    reached = e.radius_reached > 1 ? e.radius_reached - 1 : 0;
    if (reached < 2) throw;
    ball = build_ball(ctx.identity, dist, reached, vertex_cap);
  }
  int64_t cum = 0;
  for (int r = 0; r <= reached; ++r) {
    cum += ball.new_at_dist[r];
    const int64_t bd = ball.new_at_dist[r + 1];
    profile.rows.push_back({r, cum, bd, ball.new_at_dist[r]});
  }

  std::vector<double> rs, logb, logr;
  const size_t lo = profile.rows.size() / 2;
  for (size_t i = lo; i < profile.rows.size(); ++i) {
    const auto& row = profile.rows[i];
    if (row.r < 1) continue;
    rs.push_back(static_cast<double>(row.r));
    logr.push_back(std::log(static_cast<double>(row.r)));
    logb.push_back(std::log(static_cast<double>(row.ball_size)));
  }
  const Fit lin = fit_line(rs, logb);
  const Fit log = fit_line(logr, logb);
  profile.exp_rate = lin.slope;
  profile.poly_degree = log.slope;
  profile.exp_residual = lin.residual;
  profile.poly_residual = log.residual;
  if (lin.residual < log.residual && lin.slope > 0.05) {
    profile.classification = GrowthClass::exponential;
  } else if (log.residual < lin.residual) {
    profile.classification = GrowthClass::polynomial;
  } else {
    profile.classification = GrowthClass::undetermined;
  }
  return profile;
}

const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::exponential: return "exponential";
    case GrowthClass::undetermined: return "undetermined";
  }
  return "?";
}

}  // namespace harmlab

#include "harmlab/harmonic.hpp"

namespace harmlab {

OneStepEpsilonTable::Level& OneStepEpsilonTable::level(int radius) {
  auto it = levels_.find(radius);
  if (it != levels_.end()) return it->second;
  Level lvl;
  lvl.ball = std::make_shared<DirectedBall>(
      cache_ ? cache_->get_or_build(ctx_.identity, dist_, radius)
             : build_ball(ctx_.identity, dist_, radius));
  lvl.lu = std::make_shared<SparseLU<Rational>>(factor_region<Rational>(*lvl.ball));
  lvl.center_row = exit_row(*lvl.ball, *lvl.lu, 0);
  return levels_.emplace(radius, std::move(lvl)).first->second;
}

Rational OneStepEpsilonTable::eps(int radius, const GroupElement& s) {
  if (radius < 0) throw std::invalid_argument("one-step epsilon: radius must be >= 0");
  Level& lvl = level(radius);
  const std::string key = format_element(s);
  if (auto it = lvl.by_generator.find(key); it != lvl.by_generator.end()) return it->second;

  Rational value;
  const DirectedBall& ball = *lvl.ball;
  const int32_t interior = ball.interior_index(s);
  if (interior == 0) {
    value = 0;  // the pair (e, e)
  } else if (interior > 0) {
    const std::vector<Rational> row_b = exit_row(ball, *lvl.lu, interior);
    value = epsilon_from_rows(lvl.center_row, row_b).value;
  } else {
    // radius 0: s sits on the boundary; mu_S(s, y) = [y == s] by the
    // telescoping convention mu(x, x) = 1. The center row comes from the
    // solve, so lazy self-loops are normalized away correctly.
    const int32_t xs = ball.boundary_index(s);
    if (xs < 0) throw std::invalid_argument("one-step epsilon: s is not one step from e");
    std::vector<Rational> row_b(ball.boundary_count(), Rational(0));
    row_b[xs] = 1;
    value = epsilon_from_rows(lvl.center_row, row_b).value;
  }
  lvl.by_generator.emplace(key, value);
  return value;
}

Rational OneStepEpsilonTable::max_eps(int radius) {
  Rational worst = 0;
  for (const auto& [s, p] : dist_.steps) {
    const Rational e = eps(radius, s);
    if (e > worst) worst = e;
  }
  return worst;
}

const DirectedBall& OneStepEpsilonTable::ball_at(int radius) { return *level(radius).ball; }
const SparseLU<Rational>& OneStepEpsilonTable::lu_at(int radius) { return *level(radius).lu; }
const std::vector<Rational>& OneStepEpsilonTable::center_row_at(int radius) {
  return level(radius).center_row;
}

TraceReport<Rational> geodesic_ratio_trace(const DirectedBall& ball,
                                           const std::vector<Rational>& target_column,
                                           int32_t boundary_idx, OneStepEpsilonTable& table) {
  if (boundary_idx < 0 || boundary_idx >= ball.boundary_count()) {
    throw std::invalid_argument("trace: not a boundary vertex");
  }
  const std::vector<int32_t> geo = geodesic_interior_indices(ball, boundary_idx);
  const auto path_len = static_cast<int32_t>(geo.size());  // steps along the geodesic

  TraceReport<Rational> rep;
  rep.boundary_index = boundary_idx;
  rep.mu_center = target_column[geo[0]];
  rep.product = 1;
  rep.all_within = true;

  for (int32_t i = 0; i < path_len; ++i) {
    const Rational& mu_i = target_column[geo[i]];
    if (!(mu_i > 0)) {
      throw std::invalid_argument("trace: mu vanishes at geodesic index " + std::to_string(i));
    }
    const Rational mu_next = (i + 1 < path_len) ? target_column[geo[i + 1]] : Rational(1);
    if (i + 1 < path_len && !(mu_next > 0)) {
      throw std::invalid_argument("trace: mu vanishes at geodesic index " + std::to_string(i + 1));
    }

    RatioStep<Rational> step;
    step.ratio = mu_i / mu_next;
    step.deviation = step.ratio >= 1 ? Rational(step.ratio - 1) : Rational(1 - step.ratio);

    // Recenter the edge g_i -> g_{i+1} at the identity: the bound is the
    // one-step epsilon on the ball of the remaining radius.
    const GroupElement& from = ball.vertices[geo[i]];
    const GroupElement to =
        (i + 1 < path_len) ? ball.vertices[geo[i + 1]] : ball.boundary[boundary_idx];
    const GroupElement s = multiply(invert(from), to);
    step.bound = table.eps(ball.radius - i, s);
    step.within_bound = !(step.deviation > step.bound);
    rep.all_within = rep.all_within && step.within_bound;

    rep.product *= step.ratio;
    rep.steps.push_back(std::move(step));
  }
  rep.telescopes = (rep.product == rep.mu_center);
  return rep;
}

bool GrowthCertificate::premise_everywhere() const {
  for (const auto& row : rows) {
    if (!row.premise_holds) return false;
  }
  return !rows.empty();
}

bool GrowthCertificate::coherent() const {
  for (const auto& row : rows) {
    if (row.premise_holds && !(row.min_mu_ok && row.boundary_ok)) return false;
  }
  return true;
}

GrowthCertificate growth_certificate(const GroupContext& ctx, const StepDistribution& dist,
                                     const Rational& delta, int r0, int s_max,
                                     const BallCache* cache) {
  if (!(delta > 0) || !(delta < 1)) {
    throw std::invalid_argument("certificate: delta must lie in (0,1)");
  }
  if (r0 < 1 || r0 >= s_max) {
    throw std::invalid_argument("certificate: need 1 <= r0 < s_max");
  }
  GrowthCertificate cert;
  cert.delta = delta;
  cert.r0 = r0;
  cert.min_step_prob = dist.min_prob;

  OneStepEpsilonTable table(ctx, dist, cache);
  const Rational one_minus = Rational(1) - delta;
  Rational max_so_far = 0;
  for (int r = r0 + 1; r <= s_max; ++r) {
    CertificateRow row;
    row.r = r;
    row.one_step_eps_at_r = table.max_eps(r);
    if (row.one_step_eps_at_r > max_so_far) max_so_far = row.one_step_eps_at_r;
    row.max_eps_so_far = max_so_far;
    row.premise_holds = !(max_so_far > delta);
    row.bound = rational_pow(one_minus, r - r0) * rational_pow(dist.min_prob, r0);

    const DirectedBall& ball = table.ball_at(r);
    const std::vector<Rational>& center_row = table.center_row_at(r);
    Rational min_mu;
    for (int32_t x = 0; x < ball.boundary_count(); ++x) {
      if (x == 0 || center_row[x] < min_mu) min_mu = center_row[x];
    }
    row.min_mu = min_mu;
    row.boundary_size = ball.boundary_count();
    row.min_mu_ok = !(min_mu < row.bound);
    row.boundary_ok = !(Rational(static_cast<long>(row.boundary_size)) * row.bound > 1);
    row.conclusion_holds = row.premise_holds && row.min_mu_ok && row.boundary_ok;
    cert.rows.push_back(std::move(row));
  }
  return cert;
}

}  // namespace harmlab

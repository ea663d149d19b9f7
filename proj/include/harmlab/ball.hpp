#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "harmlab/groups.hpp"
#include "harmlab/step_distribution.hpp"

namespace harmlab {

/// Thrown when a construction or solve would exceed a configured resource
/// cap. Carries how far the construction got.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what, int reached = -1)
      : std::runtime_error(what), radius_reached(reached) {}
  int radius_reached;
};

/// A finite vertex set with its outgoing structure: interior vertices
/// (dense indices in discovery order), positive-probability edges split
/// into interior->interior and interior->boundary, and the boundary
/// (vertices outside the set with an in-edge from it). Immutable after
/// construction.
struct Region {
  std::vector<GroupElement> vertices;
  std::unordered_map<GroupElement, int32_t, GroupElementHash> index_of;

  // Per interior vertex, out-edges in declared generator order.
  std::vector<std::vector<std::pair<int32_t, Rational>>> edges_int;
  std::vector<std::vector<std::pair<int32_t, Rational>>> edges_bd;

  std::vector<GroupElement> boundary;
  std::unordered_map<GroupElement, int32_t, GroupElementHash> boundary_index_of;
  std::vector<std::vector<int32_t>> boundary_preds;

  int32_t interior_count() const { return static_cast<int32_t>(vertices.size()); }
  int32_t boundary_count() const { return static_cast<int32_t>(boundary.size()); }

  int32_t interior_index(const GroupElement& g) const;  // -1 if absent
  int32_t boundary_index(const GroupElement& g) const;  // -1 if absent
};

/// Directed ball B(a,r): all vertices reachable from the center by a
/// positive-probability path of length <= r. Index 0 is the center;
/// indices follow BFS discovery order with generators enumerated in
/// declared order, so two builds of the same ball are identical.
struct DirectedBall : Region {
  GroupElement center;
  int radius = 0;

  std::vector<int32_t> dist;         // BFS distance from the center
  std::vector<int32_t> geo_pred;     // first-discoverer predecessor; -1 at the center
  std::vector<int32_t> bd_geo_pred;  // same for boundary vertices
  std::vector<int64_t> new_at_dist;  // vertices first seen at each distance, 0..r+1
};

constexpr size_t kDefaultVertexCap = 5'000'000;

/// BFS construction. Throws CapExceeded (with the radius reached) when the
/// vertex cap would be passed.
DirectedBall build_ball(const GroupElement& center, const StepDistribution& dist, int radius,
                        size_t vertex_cap = kDefaultVertexCap);

/// Union of balls as a general region (interior = union of interiors).
/// Used for monotonicity experiments on non-ball sets.
Region build_union(const std::vector<const DirectedBall*>& balls, const StepDistribution& dist);

/// The deterministic BFS geodesic from the center to boundary vertex x:
/// center = g_0 -> ... -> g_L = x with L = dist(x). Every prefix is a
/// geodesic. Throws std::invalid_argument if x is not a boundary vertex.
std::vector<GroupElement> geodesic(const DirectedBall& ball, const GroupElement& x);
std::vector<int32_t> geodesic_interior_indices(const DirectedBall& ball, int32_t boundary_idx);

enum class GrowthClass { polynomial, exponential, undetermined };

/// Ball and boundary sizes per radius plus log-linear / log-log fits over
/// the top half of radii.
struct GrowthProfile {
  struct Row {
    int r;
    int64_t ball_size;
    int64_t boundary_size;
    int64_t new_vertices;
  };
  std::vector<Row> rows;
  double exp_rate = 0.0;     // slope of log|B| vs r
  double poly_degree = 0.0;  // slope of log|B| vs log r
  double exp_residual = 0.0;
  double poly_residual = 0.0;
  GrowthClass classification = GrowthClass::undetermined;
  bool truncated = false;  // cap hit before r_max
};

GrowthProfile growth_profile(const GroupContext& ctx, const StepDistribution& dist, int r_max,
                             size_t vertex_cap = kDefaultVertexCap);

const char* growth_class_name(GrowthClass c);

}  // namespace harmlab

#pragma once

#include <optional>
#include <string>

#include "harmlab/ball.hpp"

namespace harmlab {

/// Content-addressed on-disk cache of directed balls.
///
/// One file per (family, step law, center, radius), named by the FNV-1a
/// hash of those inputs. Binary layout, little endian, varint integers:
///
///   magic "HLB1"
///   family spec string        (uvarint length + bytes)
///   radius                    (ivarint)
///   interior count, boundary count (uvarint)
///   interior payloads, boundary payloads (canonical element encoding)
///   interior BFS distances    (ivarint each)
///   per interior vertex: interior edge count, then (target uvarint,
///     probability numerator mpz, denominator mpz); boundary edge count,
///     then the same triple form. mpz = sign byte + uvarint byte count +
///     big-endian magnitude bytes.
///   FNV-1a 64 checksum of everything above (8 bytes LE)
///
/// Geodesic predecessors are not stored; they are reconstructed from the
/// stored edge order, which equals BFS discovery order. Files that fail
/// the checksum or any structural check are discarded and rebuilt.
class BallCache {
 public:
  BallCache() = default;  // disabled
  explicit BallCache(std::string dir);

  /// Reads HARMLAB_CACHE_DIR; disabled when unset or empty.
  static BallCache from_env();

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }

  std::string path_for(const GroupElement& center, const StepDistribution& dist,
                       int radius) const;

  DirectedBall get_or_build(const GroupElement& center, const StepDistribution& dist, int radius,
                            size_t vertex_cap = kDefaultVertexCap) const;

 private:
  std::string dir_;
};

void save_ball(const DirectedBall& ball, const std::string& path);
std::optional<DirectedBall> load_ball(const std::string& path, const FamilySpec& expected_family);

}  // namespace harmlab

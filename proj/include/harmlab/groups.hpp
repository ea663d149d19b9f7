#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "harmlab/rational.hpp"

namespace harmlab {

enum class Family : uint8_t {
  Zd,              // free abelian Z^d
  Free,            // free group F_k
  Heisenberg,      // discrete Heisenberg group H_3(Z)
  Lamplighter,     // Z_2 wr Z
  BaumslagSolitar, // BS(1,m), affine maps x -> m^k x + b
  Grigorchuk,      // the first Grigorchuk group
};

struct FamilySpec {
  Family family = Family::Zd;
  int32_t d = 1;   // dimension (Zd) or rank (Free)
  int64_t m = 2;   // multiplier for BS(1,m)

  bool operator==(const FamilySpec&) const = default;
  std::string str() const;  // "z:2", "free:2", "heis", "lamplighter", "bs:1:2", "grigorchuk"
};

/// Parses the family spec strings used by the CLI and config files.
/// Throws std::invalid_argument for unknown families or bad parameters
/// (d = 0, k = 0, m < 2).
FamilySpec parse_family(const std::string& spec);

// --- canonical payloads -------------------------------------------------

struct ZdPayload {
  std::vector<int64_t> coords;
  bool operator==(const ZdPayload&) const = default;
};

/// Freely reduced word; letter 2i is generator i, letter 2i+1 its inverse.
struct FreeWordPayload {
  std::vector<uint16_t> letters;
  bool operator==(const FreeWordPayload&) const = default;
};

/// Upper-triangular coordinates: (x, y, z) with
/// (x1,y1,z1)*(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2).
struct HeisPayload {
  int64_t x = 0, y = 0, z = 0;
  bool operator==(const HeisPayload&) const = default;
};

/// Sorted finite set of lit lamps plus lamplighter position.
struct LampPayload {
  std::vector<int64_t> lamps;
  int64_t pos = 0;
  bool operator==(const LampPayload&) const = default;
};

/// Affine map x -> m^exp * x + shift with shift in Z[1/m].
struct BsPayload {
  int64_t exp = 0;
  Rational shift = 0;
  bool operator==(const BsPayload& o) const { return exp == o.exp && shift == o.shift; }
};

/// Reduced word over {a,b,c,d} plus the canonical portrait key. The word
/// alone is not canonical (the group has more relations than the
/// reduction uses); equality and hashing go through the key, which is
/// derived from the word problem and cached process-wide.
struct GrigPayload {
  std::vector<uint8_t> word;
  std::string canon;
  bool operator==(const GrigPayload& o) const { return canon == o.canon; }
};

using Payload =
    std::variant<ZdPayload, FreeWordPayload, HeisPayload, LampPayload, BsPayload, GrigPayload>;

/// Canonical-form element of one of the supported families. Immutable
/// after construction; equal group elements always have equal payloads.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FamilySpec fam, Payload payload)
      : fam_(std::move(fam)), payload_(std::move(payload)) {}

  const FamilySpec& family() const { return fam_; }
  const Payload& payload() const { return payload_; }

  bool operator==(const GroupElement& o) const {
    return fam_ == o.fam_ && payload_ == o.payload_;
  }

 private:
  FamilySpec fam_;
  Payload payload_;
};

struct GroupElementHash {
  size_t operator()(const GroupElement& g) const;
};

// --- group context and operations ---------------------------------------

/// Identity plus named generators in their declared order. The order is
/// part of every downstream determinism contract (ball indices, geodesic
/// tie-breaks, CSV output).
struct GroupContext {
  FamilySpec fam;
  GroupElement identity;
  std::vector<std::pair<std::string, GroupElement>> generators;

  const GroupElement& generator(const std::string& name) const;
};

/// Builds the context for a family. Generator sets:
///   z:d          x1, X1, ..., xd, Xd        (+-unit vectors)
///   free:k       a, A, b, B, ...            (letters and inverses)
///   heis         x, X, y, Y
///   lamplighter  t, T, s                    (move, move back, toggle)
///   bs:1:m       s, S, t, T                 (x+1, x-1, mx, x/m)
///   grigorchuk   a, b, c, d                 (involutions)
GroupContext make_group(const FamilySpec& spec);

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);
bool is_identity(const GroupElement& g);

/// Left-translation by g^-1 applied to every vertex. This is the Cayley
/// automorphism used to recenter geodesic segments: it fixes the step
/// law (steps are right multiplications) and maps g to the identity.
std::vector<GroupElement> translate_path(const GroupElement& g,
                                         const std::vector<GroupElement>& path);

std::string format_element(const GroupElement& g);

/// Parses a product of named generators ("abA", "x1.X2", "e"). Multi-char
/// generator names may be separated by '.', '*' or whitespace; matching is
/// greedy so "x12" binds to generator x12 when it exists.
GroupElement parse_element(const GroupContext& ctx, const std::string& word);

// Byte serialization of the operational payload (used by the ball cache).
void serialize_element(const GroupElement& g, std::vector<uint8_t>& out);
GroupElement deserialize_element(const FamilySpec& fam, const uint8_t*& p, const uint8_t* end);

}  // namespace harmlab

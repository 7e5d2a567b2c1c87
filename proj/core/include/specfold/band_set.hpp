#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "specfold/errors.hpp"
#include "specfold/rational.hpp"

namespace specfold {

/// Half-open axis-aligned box  [lo_1,hi_1) x ... x [lo_d,hi_d)  with exact
/// rational corners.  Never empty: lo_i < hi_i is enforced on construction.
class RationalBox {
 public:
  RationalBox(std::vector<Rational> lo, std::vector<Rational> hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const std::vector<Rational>& lo() const { return lo_; }
  const std::vector<Rational>& hi() const { return hi_; }
  const Rational& lo(int axis) const { return lo_[static_cast<size_t>(axis)]; }
  const Rational& hi(int axis) const { return hi_[static_cast<size_t>(axis)]; }

  Rational volume() const;
  bool contains(const std::vector<Rational>& point) const;

  bool operator==(const RationalBox&) const = default;

 private:
  std::vector<Rational> lo_, hi_;
};

/// Finite union of half-open rational boxes, kept in a canonical normal
/// form: pairwise disjoint, greedily merged (last axis first), sorted by
/// lower-left corner.  Two BandSets describe the same point set iff their
/// normal forms compare equal.  Always bounded.
class BandSet {
 public:
  /// The empty set in dimension `dim`.
  static BandSet empty(int dim);

  /// Normalizes an arbitrary (possibly overlapping) list of boxes.
  static BandSet from_boxes(int dim, std::vector<RationalBox> boxes);

  /// Convenience for a single interval in dimension one.
  static BandSet interval(const Rational& lo, const Rational& hi);

  int dim() const { return dim_; }
  const std::vector<RationalBox>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }

  /// Lebesgue measure (sum of box volumes; boxes are disjoint).
  Rational measure() const;

  bool contains(const std::vector<Rational>& point) const;

  /// Smallest box enclosing the set; throws EmptyBand when empty.
  RationalBox bounding_box() const;

  bool operator==(const BandSet&) const = default;

 private:
  BandSet(int dim, std::vector<RationalBox> boxes)
      : dim_(dim), boxes_(std::move(boxes)) {}

  int dim_ = 1;
  std::vector<RationalBox> boxes_;  // canonical
};

enum class SetOp { Union, Intersect, Difference, SymDiff };

BandSet boolean_op(const BandSet& a, const BandSet& b, SetOp op);

inline BandSet set_union(const BandSet& a, const BandSet& b) {
  return boolean_op(a, b, SetOp::Union);
}
inline BandSet set_intersect(const BandSet& a, const BandSet& b) {
  return boolean_op(a, b, SetOp::Intersect);
}
inline BandSet set_difference(const BandSet& a, const BandSet& b) {
  return boolean_op(a, b, SetOp::Difference);
}
inline BandSet set_symdiff(const BandSet& a, const BandSet& b) {
  return boolean_op(a, b, SetOp::SymDiff);
}

/// Image under the diagonal affine map x_i -> scale_i * x_i + shift_i.
/// Negative scales flip the interval; the image is renormalized to the
/// half-open convention, which changes it only by endpoints (a null set).
/// Throws ZeroFactor when some scale_i == 0.
BandSet affine_map(const BandSet& set, const std::vector<Rational>& scale,
                   const std::vector<Rational>& shift);

/// How two sets relate, up to null sets of endpoints.  Precedence when
/// several descriptions apply (only possible with empty operands):
/// Equal beats Disjoint, so two empty sets compare Equal, while an empty
/// set against a non-empty one is Disjoint.
enum class SetRelation { Equal, SubsetProper, SupersetProper, Disjoint, Overlapping };

SetRelation relation(const BandSet& a, const BandSet& b);

/// Text form, e.g. "dim=1; [-1,-1/2) u [1/2,1)" or "dim=2; [0,1)x[0,1/2)".
/// The empty set renders as "dim=d; {}".  format/parse round-trip exactly.
std::string format_band_set(const BandSet& set);
BandSet parse_band_set(std::string_view text);

/// Parses a single box like "[0,1/3)" or "[0,1)x[1/2,1)".
RationalBox parse_box(std::string_view text);

/// Display chart change for subsets of [0,1)^d: coordinates in [1/2,1) are
/// shifted by -1, yielding the same torus set inside [-1/2,1/2)^d.
BandSet recenter_unit_torus(const BandSet& set);

}  // namespace specfold

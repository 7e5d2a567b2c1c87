#pragma once

#include <string>
#include <vector>

#include "specfold/periodization.hpp"

namespace specfold {

// How the ranges of two analysis operators sit relative to each other.
enum class RelationKind {
  Equal,             // same closed subspace
  Orthogonal,        // ranges orthogonal (coefficient streams can share a channel)
  FirstInsideSecond, // proper containment
  SecondInsideFirst,
  NontrivialOverlap, // neither contained, not orthogonal
};

// A claim a caller wants checked for a pair of systems (or lists of systems).
enum class RangeClaim { Equal, Orthogonal, Contained, Overlap };

/// Outcome of comparing one pair of (band, lattice) systems.
///
/// The comparison itself happens on the fold supports, which are exact; the
/// `certified` flag records whether that support comparison *decides* the
/// range relation (both directions) or is only a necessary consequence of it.
/// When `certified` is false a refutation is still decisive -- the supports
/// disagree, so the claimed relation is impossible -- but an agreement does
/// not confirm the relation.
struct RangeRelation {
  RelationKind kind = RelationKind::Equal;
  bool certified = false;

  // Certificates, all exact subsets of the ambient space.
  BandSet support_first = BandSet::empty(1);  // fold support of the first system
  BandSet support_second = BandSet::empty(1); // fold support of the second system
  BandSet overlap = BandSet::empty(1);        // intersection of the two supports
  BandSet only_first = BandSet::empty(1);     // support_first minus support_second
  BandSet only_second = BandSet::empty(1);    // support_second minus support_first
};

/// Decide the relation between the ranges of two sampling systems.
///
/// Requires both lattices to be sampling for their band (fold bounded by 1);
/// throws NotSamplingMatrix naming the offending pair otherwise.  Under that
/// hypothesis every RelationKind returned is certified: equality of supports
/// is equivalent to equality of ranges, disjointness to orthogonality, and
/// inclusion to containment.
RangeRelation classify_single(const BandSet& first_band, const Lattice& first_lattice,
                              const BandSet& second_band, const Lattice& second_lattice);

/// Same comparison without the sampling requirement.
///
/// For merely Bessel systems only the Orthogonal verdict is certified
/// (disjoint fold supports force orthogonal ranges).  Equal / contained /
/// overlapping verdicts report that the necessary support conditions hold;
/// `certified` stays false for them.
RangeRelation classify_bessel(const BandSet& first_band, const Lattice& first_lattice,
                              const BandSet& second_band, const Lattice& second_lattice);

// Aggregate verdict for a claim about direct sums of ranges.
enum class VerdictStatus {
  CertifiedOrthogonal,    // orthogonality claim, established coordinatewise
  NecessaryConditionsHold,// claim not refuted; support conditions all hold
  Violated,               // some coordinate refutes the claim
};

struct UnionVerdict {
  RangeClaim claim = RangeClaim::Orthogonal;
  VerdictStatus overall = VerdictStatus::Violated;
  // One entry per coordinate after zero-padding the shorter list.
  std::vector<RangeRelation> coordinates;
  std::vector<std::string> warnings;
};

/// Check a claim for two finite families sharing one band each.
///
/// The families are compared coordinatewise; if one list is shorter it is
/// padded with trivial (zero) systems, whose fold support is empty.  Both
/// lists must be nonempty (EmptyList) and all lattices must share the band's
/// dimension.  Only the orthogonality claim can be certified; the other
/// claims additionally assume the stacked family is sampling, which is
/// recorded as a warning rather than checked.
UnionVerdict classify_union(const BandSet& first_band, const std::vector<Lattice>& first_lattices,
                            const BandSet& second_band, const std::vector<Lattice>& second_lattices,
                            RangeClaim claim);

std::string to_string(RelationKind kind);
std::string to_string(RangeClaim claim);
std::string to_string(VerdictStatus status);
RangeClaim parse_range_claim(const std::string& text); // throws ParseError

} // namespace specfold

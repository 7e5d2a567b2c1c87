#include "specfold/range_classifier.hpp"

#include <algorithm>

#include "specfold/errors.hpp"

namespace specfold {

namespace {

// Compare two exact supports and fill in the certificates.  The caller
// decides which kinds count as certified.
RangeRelation relate_supports(BandSet support_first, BandSet support_second) {
  RangeRelation rel;
  rel.overlap = set_intersect(support_first, support_second);
  rel.only_first = set_difference(support_first, support_second);
  rel.only_second = set_difference(support_second, support_first);

  switch (relation(support_first, support_second)) {
    case SetRelation::Equal: rel.kind = RelationKind::Equal; break;
    case SetRelation::Disjoint: rel.kind = RelationKind::Orthogonal; break;
    case SetRelation::SubsetProper: rel.kind = RelationKind::FirstInsideSecond; break;
    case SetRelation::SupersetProper: rel.kind = RelationKind::SecondInsideFirst; break;
    case SetRelation::Overlapping: rel.kind = RelationKind::NontrivialOverlap; break;
  }
  rel.support_first = std::move(support_first);
  rel.support_second = std::move(support_second);
  return rel;
}

void check_dimensions(const BandSet& band, const Lattice& lattice, const char* which) {
  if (band.dim() != lattice.dim())
    throw DimensionMismatch(std::string("band and lattice dimension differ for the ") + which +
                            " system");
}

} // namespace

RangeRelation classify_single(const BandSet& first_band, const Lattice& first_lattice,
                              const BandSet& second_band, const Lattice& second_lattice) {
  check_dimensions(first_band, first_lattice, "first");
  check_dimensions(second_band, second_lattice, "second");
  if (first_band.dim() != second_band.dim())
    throw DimensionMismatch("the two systems live in different dimensions");

  SamplingCheck first = is_sampling_matrix(first_band, first_lattice);
  if (!first.is_sampling)
    throw NotSamplingMatrix("first (band, lattice) pair is not sampling: fold exceeds 1");
  SamplingCheck second = is_sampling_matrix(second_band, second_lattice);
  if (!second.is_sampling)
    throw NotSamplingMatrix("second (band, lattice) pair is not sampling: fold exceeds 1");

  RangeRelation rel = relate_supports(first.folded.support(), second.folded.support());
  // With both systems sampling the support comparison is a biconditional:
  // every kind is decided, not merely not refuted.
  rel.certified = true;
  return rel;
}

RangeRelation classify_bessel(const BandSet& first_band, const Lattice& first_lattice,
                              const BandSet& second_band, const Lattice& second_lattice) {
  check_dimensions(first_band, first_lattice, "first");
  check_dimensions(second_band, second_lattice, "second");
  if (first_band.dim() != second_band.dim())
    throw DimensionMismatch("the two systems live in different dimensions");

  RangeRelation rel = relate_supports(multiplicity(first_band, first_lattice).support(),
                                      multiplicity(second_band, second_lattice).support());
  // Disjoint supports force orthogonal ranges with no sampling hypothesis;
  // the remaining kinds only record that the necessary condition holds.
  rel.certified = (rel.kind == RelationKind::Orthogonal);
  return rel;
}

UnionVerdict classify_union(const BandSet& first_band, const std::vector<Lattice>& first_lattices,
                            const BandSet& second_band, const std::vector<Lattice>& second_lattices,
                            RangeClaim claim) {
  if (first_lattices.empty() || second_lattices.empty())
    throw EmptyList("both families must contain at least one lattice");
  if (first_band.dim() != second_band.dim())
    throw DimensionMismatch("the two families live in different dimensions");
  for (const Lattice& lattice : first_lattices) check_dimensions(first_band, lattice, "first");
  for (const Lattice& lattice : second_lattices) check_dimensions(second_band, lattice, "second");

  const std::size_t dim = first_band.dim();
  const std::size_t count = std::max(first_lattices.size(), second_lattices.size());

  UnionVerdict verdict;
  verdict.claim = claim;
  verdict.coordinates.reserve(count);
  bool padded = false;

  for (std::size_t i = 0; i < count; ++i) {
    BandSet support_first = (i < first_lattices.size())
                                ? multiplicity(first_band, first_lattices[i]).support()
                                : BandSet::empty(dim);
    BandSet support_second = (i < second_lattices.size())
                                 ? multiplicity(second_band, second_lattices[i]).support()
                                 : BandSet::empty(dim);
    padded = padded || i >= first_lattices.size() || i >= second_lattices.size();

    RangeRelation rel = relate_supports(std::move(support_first), std::move(support_second));
    rel.certified = (rel.kind == RelationKind::Orthogonal);
    verdict.coordinates.push_back(std::move(rel));
  }

  if (padded)
    verdict.warnings.push_back("families have different lengths; the shorter one was padded "
                               "with trivial systems (empty support)");

  const auto all_of_kind = [&](auto predicate) {
    return std::all_of(verdict.coordinates.begin(), verdict.coordinates.end(), predicate);
  };

  switch (claim) {
    case RangeClaim::Orthogonal:
      // Coordinatewise disjoint supports are sufficient on their own.
      verdict.overall = all_of_kind([](const RangeRelation& r) {
                          return r.kind == RelationKind::Orthogonal;
                        })
                            ? VerdictStatus::CertifiedOrthogonal
                            : VerdictStatus::Violated;
      break;
    case RangeClaim::Equal:
      verdict.overall = all_of_kind([](const RangeRelation& r) {
                          return r.kind == RelationKind::Equal;
                        })
                            ? VerdictStatus::NecessaryConditionsHold
                            : VerdictStatus::Violated;
      break;
    case RangeClaim::Contained:
      verdict.overall = all_of_kind([](const RangeRelation& r) {
                          return r.only_first.is_empty();
                        })
                            ? VerdictStatus::NecessaryConditionsHold
                            : VerdictStatus::Violated;
      break;
    case RangeClaim::Overlap: {
      bool some_overlap = std::any_of(verdict.coordinates.begin(), verdict.coordinates.end(),
                                      [](const RangeRelation& r) { return !r.overlap.is_empty(); });
      verdict.overall =
          some_overlap ? VerdictStatus::NecessaryConditionsHold : VerdictStatus::Violated;
      break;
    }
  }

  if (verdict.overall == VerdictStatus::NecessaryConditionsHold)
    verdict.warnings.push_back("verdict assumes the stacked families are jointly sampling; "
                               "only support-level necessary conditions were checked");
  return verdict;
}

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Equal: return "equal";
    case RelationKind::Orthogonal: return "orthogonal";
    case RelationKind::FirstInsideSecond: return "first-inside-second";
    case RelationKind::SecondInsideFirst: return "second-inside-first";
    case RelationKind::NontrivialOverlap: return "nontrivial-overlap";
  }
  return "?";
}

std::string to_string(RangeClaim claim) {
  switch (claim) {
    case RangeClaim::Equal: return "equal";
    case RangeClaim::Orthogonal: return "orthogonal";
    case RangeClaim::Contained: return "contained";
    case RangeClaim::Overlap: return "overlap";
  }
  return "?";
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::CertifiedOrthogonal: return "certified-orthogonal";
    case VerdictStatus::NecessaryConditionsHold: return "necessary-conditions-hold";
    case VerdictStatus::Violated: return "violated";
  }
  return "?";
}

RangeClaim parse_range_claim(const std::string& text) {
  if (text == "equal") return RangeClaim::Equal;
  if (text == "orthogonal") return RangeClaim::Orthogonal;
  if (text == "contained") return RangeClaim::Contained;
  if (text == "overlap") return RangeClaim::Overlap;
  throw ParseError("unknown claim '" + text + "' (expected equal|orthogonal|contained|overlap)");
}

} // namespace specfold

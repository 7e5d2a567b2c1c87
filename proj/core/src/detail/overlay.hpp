#pragma once

// Internal cell-grid machinery shared by the set algebra and the torus step
// functions.  Not installed.

#include <optional>
#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/rational.hpp"

namespace specfold::detail {

struct ValuedBox {
  RationalBox box;
  Rational value;
};

/// Canonical greedy merge of pairwise disjoint boxes carrying values:
/// equal-valued neighbours are coalesced along the last axis first, then
/// axis by axis towards the first, and the result is sorted by corner.
/// The outcome depends only on the underlying step function, not on how it
/// was cut into pieces.
std::vector<ValuedBox> merge_canonical(int dim, std::vector<ValuedBox> items);

/// Decomposes space into the elementary cells induced by all contribution
/// edges (and the domain edges, when given), then assigns each cell the sum
/// of the values of the contributions covering it.  With a domain only the
/// cells inside it are produced and, if keep_zero, uncovered cells appear
/// with value 0 so the domain is partitioned exactly.  Without a domain
/// zero cells are always dropped.  Cells are elementary (not yet merged).
std::vector<ValuedBox> overlay_cells(int dim,
                                     const std::vector<ValuedBox>& contributions,
                                     const std::optional<RationalBox>& domain,
                                     bool keep_zero);

}  // namespace specfold::detail

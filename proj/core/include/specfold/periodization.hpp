#pragma once

#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/lattice.hpp"
#include "specfold/torus_step.hpp"

namespace specfold {

/// Folded multiplicity of a band under a lattice: for each point xi of the
/// torus chart, the number of integer translates k with A*^-1 (xi + k)
/// inside the band — equivalently, how many sheets of A* band land on xi
/// after periodization.  Exact step function.  The lattice shift does not
/// move the fold and is ignored.
TorusStep multiplicity(const BandSet& band, const Lattice& lattice);

/// Grid of integers sampled on midpoints ((i+1/2)/resolution per axis).
struct IntegerGrid {
  int dim = 1;
  long resolution = 0;
  std::vector<long long> values;  // row-major, last axis fastest
  bool approximate = true;        // sampled, not exact

  long long value_at(const std::vector<long>& index) const;
  long long max_value() const;
};

/// Fallback for general (possibly non-diagonal) invertible matrices: the
/// same folded count, evaluated exactly at grid midpoints but reported as
/// samples.  Agrees with multiplicity() wherever both apply and the
/// midpoint is not a breakpoint of the exact step function.
IntegerGrid numeric_multiplicity(const BandSet& band, const RationalMatrix& matrix,
                                 long resolution);

struct SamplingCheck {
  bool is_sampling = false;
  TorusStep folded;  // certificate either way
};

/// A lattice samples the band cleanly iff no two sheets overlap: the folded
/// multiplicity never exceeds 1.
SamplingCheck is_sampling_matrix(const BandSet& band, const Lattice& lattice);

struct FrameBounds {
  Rational lower, upper;
  bool tight() const { return lower == upper; }
};

/// Exact frame bounds of the translate system generated by the band's
/// indicator along the lattice, as a frame for its closed span:
/// (min nonzero fold) / |det A| and (max fold) / |det A|.
/// Throws EmptyBand when the band is empty.
FrameBounds frame_bounds_exact(const BandSet& band, const Lattice& lattice);

}  // namespace specfold

#include "specfold/periodization.hpp"

#include <algorithm>

namespace specfold {

namespace {

// Integer k with (box - k) meeting [0,1)^d, per axis: k in [floor(lo), ceil(hi) - 1].
struct KRange {
  std::vector<Integer> lo, hi;
};

KRange fold_range(const RationalBox& box) {
  KRange r;
  for (int ax = 0; ax < box.dim(); ++ax) {
    r.lo.push_back(rational_floor(box.lo(ax)));
    r.hi.push_back(rational_ceil(box.hi(ax)) - 1);
  }
  return r;
}

}  // namespace

TorusStep multiplicity(const BandSet& band, const Lattice& lattice) {
  if (band.dim() != lattice.dim())
    throw DimensionMismatch("band and lattice dimensions differ");
  const int dim = band.dim();
  std::vector<Rational> zero(static_cast<size_t>(dim), Rational(0));
  BandSet scaled = affine_map(band, lattice.diag(), zero);  // A* = A (diagonal)

  std::vector<TorusStep::Piece> contributions;
  for (const auto& box : scaled.boxes()) {
    KRange range = fold_range(box);
    std::vector<Integer> k(range.lo);
    while (true) {
      std::vector<Rational> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
      bool nonempty = true;
      for (int ax = 0; ax < dim && nonempty; ++ax) {
        const size_t a = static_cast<size_t>(ax);
        Rational shifted_lo = box.lo(ax) - Rational(k[a]);
        Rational shifted_hi = box.hi(ax) - Rational(k[a]);
        lo[a] = shifted_lo < 0 ? Rational(0) : shifted_lo;
        hi[a] = shifted_hi > 1 ? Rational(1) : shifted_hi;
        nonempty = lo[a] < hi[a];
      }
      if (nonempty)
        contributions.push_back({RationalBox(std::move(lo), std::move(hi)), Rational(1)});

      int ax = dim - 1;
      while (ax >= 0) {
        const size_t a = static_cast<size_t>(ax);
        if (k[a] < range.hi[a]) {
          ++k[a];
          break;
        }
        k[a] = range.lo[a];
        --ax;
      }
      if (ax < 0) break;
    }
  }
  return TorusStep::from_contributions(dim, std::move(contributions));
}

long long IntegerGrid::value_at(const std::vector<long>& index) const {
  size_t flat = 0;
  for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax)
    flat = flat * static_cast<size_t>(resolution) + static_cast<size_t>(index[ax]);
  return values[flat];
}

long long IntegerGrid::max_value() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

IntegerGrid numeric_multiplicity(const BandSet& band, const RationalMatrix& matrix,
                                 long resolution) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != band.dim())
    throw DimensionMismatch("matrix must be square and match the band dimension");
  if (resolution < 1) throw ValidationError("resolution must be positive");
  const int dim = band.dim();

  RationalMatrix adjoint = matrix.transpose();
  RationalMatrix back = adjoint.inverse();  // throws SingularMatrix

  IntegerGrid grid;
  grid.dim = dim;
  grid.resolution = resolution;
  size_t total = 1;
  for (int ax = 0; ax < dim; ++ax) total *= static_cast<size_t>(resolution);
  grid.values.assign(total, 0);
  if (band.is_empty()) return grid;

  // Bounding box of A* band from the corner images, then the usual fold range.
  RationalBox hull = band.bounding_box();
  std::vector<Rational> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
  bool first_corner = true;
  for (size_t mask = 0; mask < (static_cast<size_t>(1) << dim); ++mask) {
    std::vector<Rational> corner(static_cast<size_t>(dim));
    for (int ax = 0; ax < dim; ++ax)
      corner[static_cast<size_t>(ax)] =
          (mask >> ax) & 1 ? hull.hi(ax) : hull.lo(ax);
    std::vector<Rational> image = adjoint.apply(corner);
    for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax) {
      if (first_corner || image[ax] < lo[ax]) lo[ax] = image[ax];
      if (first_corner || image[ax] > hi[ax]) hi[ax] = image[ax];
    }
    first_corner = false;
  }
  KRange range = fold_range(RationalBox(lo, hi));

  std::vector<long> index(static_cast<size_t>(dim), 0);
  for (size_t flat = 0; flat < total; ++flat) {
    std::vector<Rational> xi(static_cast<size_t>(dim));
    for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax)
      xi[ax] = Rational(2 * index[ax] + 1, 2 * resolution);

    long long count = 0;
    std::vector<Integer> k(range.lo);
    while (true) {
      std::vector<Rational> point(static_cast<size_t>(dim));
      for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax)
        point[ax] = xi[ax] + Rational(k[ax]);
      if (band.contains(back.apply(point))) ++count;

      int ax = dim - 1;
      while (ax >= 0) {
        const size_t a = static_cast<size_t>(ax);
        if (k[a] < range.hi[a]) {
          ++k[a];
          break;
        }
        k[a] = range.lo[a];
        --ax;
      }
      if (ax < 0) break;
    }
    grid.values[flat] = count;

    int ax = dim - 1;
    while (ax >= 0) {
      const size_t a = static_cast<size_t>(ax);
      if (index[a] + 1 < resolution) {
        ++index[a];
        break;
      }
      index[a] = 0;
      --ax;
    }
  }
  return grid;
}

SamplingCheck is_sampling_matrix(const BandSet& band, const Lattice& lattice) {
  TorusStep folded = multiplicity(band, lattice);
  bool ok = folded.max_value() <= 1;
  return {ok, std::move(folded)};
}

FrameBounds frame_bounds_exact(const BandSet& band, const Lattice& lattice) {
  if (band.is_empty())
    throw EmptyBand("frame bounds of an empty band");
  TorusStep folded = multiplicity(band, lattice);
  Rational det = lattice.abs_det();
  return {folded.min_nonzero_value() / det, folded.max_value() / det};
}

}  // namespace specfold

#pragma once

#include <string>
#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/rational.hpp"

namespace specfold {

/// Step function on the torus chart [0,1)^d with rational values, stored as
/// a canonical exact partition: pieces are pairwise disjoint half-open
/// boxes covering the chart completely (zero-valued gaps included), merged
/// greedily and sorted.  Two step functions are equal as functions iff
/// their canonical forms compare equal.
class TorusStep {
 public:
  struct Piece {
    RationalBox box;
    Rational value;
    bool operator==(const Piece&) const = default;
  };

  static TorusStep constant(int dim, const Rational& value);

  /// Builds the pointwise sum of the contributions (boxes may overlap and
  /// must lie inside [0,1)^d).
  static TorusStep from_contributions(int dim, std::vector<Piece> contributions);

  int dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  Rational value_at(const std::vector<Rational>& point) const;

  /// Where the function is nonzero.
  BandSet support() const;

  Rational integral() const;

  /// Pointwise multiple of the function.
  TorusStep scaled(const Rational& factor) const;

  Rational max_value() const;
  /// Smallest value over the support; throws EmptyBand when identically 0.
  Rational min_nonzero_value() const;

  /// Pointwise sum of two step functions on the same chart.
  friend TorusStep operator+(const TorusStep& a, const TorusStep& b);

  bool operator==(const TorusStep&) const = default;

  /// Two-line preamble ("dim,pieces" header and counts), then one
  /// "lo,hi,...,value" row per piece, rationals rendered exactly.
  std::string to_csv() const;

 private:
  TorusStep(int dim, std::vector<Piece> pieces)
      : dim_(dim), pieces_(std::move(pieces)) {}

  int dim_ = 1;
  std::vector<Piece> pieces_;
};

}  // namespace specfold

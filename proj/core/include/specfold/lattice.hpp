#pragma once

#include <vector>

#include "specfold/errors.hpp"
#include "specfold/rational.hpp"

namespace specfold {

/// Full-rank sampling lattice A Z^d + shift with A diagonal rational.
/// Diagonal matrices are their own adjoints, so code that needs A* can use
/// diag() directly.  General (non-diagonal) matrices are handled only by
/// the numeric fallback path, via RationalMatrix.
class Lattice {
 public:
  explicit Lattice(const Rational& scalar) : Lattice(std::vector<Rational>{scalar}) {}

  explicit Lattice(std::vector<Rational> diag, std::vector<Rational> shift = {});

  int dim() const { return static_cast<int>(diag_.size()); }
  const std::vector<Rational>& diag() const { return diag_; }
  const std::vector<Rational>& shift() const { return shift_; }

  Rational det() const;
  Rational abs_det() const;

  /// Component-wise A^r (diagonal powers); r may be negative.
  Lattice power(long r) const;

 private:
  std::vector<Rational> diag_, shift_;
};

/// Dense rational matrix, just big enough for the exact d x d work the
/// numeric fallback needs.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols);
  static RationalMatrix identity(int d);
  static RationalMatrix diagonal(const std::vector<Rational>& diag);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  const Rational& at(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

  RationalMatrix transpose() const;
  Rational det() const;
  /// Throws SingularMatrix when not invertible.
  RationalMatrix inverse() const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

}  // namespace specfold

#include "specfold/lattice.hpp"

namespace specfold {

Lattice::Lattice(std::vector<Rational> diag, std::vector<Rational> shift)
    : diag_(std::move(diag)), shift_(std::move(shift)) {
  if (diag_.empty()) throw DimensionMismatch("lattice needs a positive dimension");
  for (const auto& d : diag_)
    if (d == 0) throw SingularMatrix("lattice matrix has a zero diagonal entry");
  if (shift_.empty()) shift_.assign(diag_.size(), Rational(0));
  if (shift_.size() != diag_.size())
    throw DimensionMismatch("lattice shift dimension does not match the matrix");
}

Rational Lattice::det() const {
  Rational d(1);
  for (const auto& x : diag_) d *= x;
  return d;
}

Rational Lattice::abs_det() const {
  Rational d = det();
  return d < 0 ? -d : d;
}

Lattice Lattice::power(long r) const {
  std::vector<Rational> diag;
  diag.reserve(diag_.size());
  for (const auto& x : diag_) diag.push_back(rational_pow(x, r));
  return Lattice(std::move(diag));
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), Rational(0)) {
  if (rows < 1 || cols < 1) throw DimensionMismatch("matrix needs positive extents");
}

RationalMatrix RationalMatrix::identity(int d) {
  RationalMatrix m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& diag) {
  RationalMatrix m(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = diag[static_cast<size_t>(i)];
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

namespace {

// Gauss-Jordan on [M | aug]; returns false when M is singular.
bool eliminate(RationalMatrix& m, RationalMatrix& aug, Rational* det_out) {
  const int n = m.rows();
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      for (int c = 0; c < aug.cols(); ++c) std::swap(aug.at(pivot, c), aug.at(col, c));
      det = -det;
    }
    Rational p = m.at(col, col);
    det *= p;
    for (int c = 0; c < n; ++c) m.at(col, c) /= p;
    for (int c = 0; c < aug.cols(); ++c) aug.at(col, c) /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (int c = 0; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
      for (int c = 0; c < aug.cols(); ++c) aug.at(r, c) -= f * aug.at(col, c);
    }
  }
  if (det_out) *det_out = det;
  return true;
}

}  // namespace

Rational RationalMatrix::det() const {
  if (rows_ != cols_) throw DimensionMismatch("determinant of a non-square matrix");
  RationalMatrix m = *this, aug(rows_, 1);
  Rational d(0);
  if (!eliminate(m, aug, &d)) return Rational(0);
  return d;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("inverse of a non-square matrix");
  RationalMatrix m = *this, inv = identity(rows_);
  if (!eliminate(m, inv, nullptr))
    throw SingularMatrix("matrix is singular, cannot invert");
  return inv;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<Rational> out(static_cast<size_t>(rows_), Rational(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      out[static_cast<size_t>(r)] += at(r, c) * v[static_cast<size_t>(c)];
  return out;
}

}  // namespace specfold

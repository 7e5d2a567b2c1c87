#include "specfold/torus_step.hpp"

#include <sstream>

#include "detail/overlay.hpp"

namespace specfold {

namespace {

RationalBox unit_chart(int dim) {
  std::vector<Rational> lo(static_cast<size_t>(dim), Rational(0));
  std::vector<Rational> hi(static_cast<size_t>(dim), Rational(1));
  return RationalBox(std::move(lo), std::move(hi));
}

}  // namespace

TorusStep TorusStep::constant(int dim, const Rational& value) {
  if (dim < 1) throw DimensionMismatch("dimension must be at least 1");
  return TorusStep(dim, {Piece{unit_chart(dim), value}});
}

TorusStep TorusStep::from_contributions(int dim, std::vector<Piece> contributions) {
  if (dim < 1) throw DimensionMismatch("dimension must be at least 1");
  RationalBox chart = unit_chart(dim);
  std::vector<detail::ValuedBox> input;
  input.reserve(contributions.size());
  for (auto& p : contributions) {
    if (p.box.dim() != dim)
      throw DimensionMismatch("piece dimension does not match step function dimension");
    for (int ax = 0; ax < dim; ++ax)
      if (p.box.lo(ax) < 0 || p.box.hi(ax) > 1)
        throw ValidationError("step function pieces must lie inside [0,1)^d");
    input.push_back({std::move(p.box), std::move(p.value)});
  }
  auto cells = detail::overlay_cells(dim, input, chart, /*keep_zero=*/true);
  auto merged = detail::merge_canonical(dim, std::move(cells));
  std::vector<Piece> pieces;
  pieces.reserve(merged.size());
  for (auto& m : merged) pieces.push_back({std::move(m.box), std::move(m.value)});
  return TorusStep(dim, std::move(pieces));
}

Rational TorusStep::value_at(const std::vector<Rational>& point) const {
  for (const auto& p : pieces_)
    if (p.box.contains(point)) return p.value;
  throw ValidationError("point outside the torus chart [0,1)^d");
}

BandSet TorusStep::support() const {
  std::vector<RationalBox> boxes;
  for (const auto& p : pieces_)
    if (p.value != 0) boxes.push_back(p.box);
  return BandSet::from_boxes(dim_, std::move(boxes));
}

Rational TorusStep::integral() const {
  Rational total(0);
  for (const auto& p : pieces_) total += p.value * p.box.volume();
  return total;
}

TorusStep TorusStep::scaled(const Rational& factor) const {
  std::vector<Piece> contributions = pieces_;
  for (auto& p : contributions) p.value *= factor;
  return from_contributions(dim_, std::move(contributions));
}

Rational TorusStep::max_value() const {
  Rational best = pieces_.front().value;  // partition is never empty
  for (const auto& p : pieces_) best = std::max(best, p.value);
  return best;
}

Rational TorusStep::min_nonzero_value() const {
  bool seen = false;
  Rational best(0);
  for (const auto& p : pieces_) {
    if (p.value == 0) continue;
    if (!seen || p.value < best) best = p.value;
    seen = true;
  }
  if (!seen) throw EmptyBand("step function is identically zero");
  return best;
}

TorusStep operator+(const TorusStep& a, const TorusStep& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("adding step functions of different dimension");
  std::vector<TorusStep::Piece> contributions = a.pieces_;
  contributions.insert(contributions.end(), b.pieces_.begin(), b.pieces_.end());
  return TorusStep::from_contributions(a.dim(), std::move(contributions));
}

std::string TorusStep::to_csv() const {
  std::ostringstream os;
  os << "dim,pieces\n" << dim_ << "," << pieces_.size() << "\n";
  for (const auto& p : pieces_) {
    for (int ax = 0; ax < dim_; ++ax)
      os << format_rational(p.box.lo(ax)) << "," << format_rational(p.box.hi(ax)) << ",";
    os << format_rational(p.value) << "\n";
  }
  return os.str();
}

}  // namespace specfold

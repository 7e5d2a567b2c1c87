#include "specfold/band_set.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <utility>

#include "detail/overlay.hpp"

namespace specfold {
namespace detail {
namespace {

int cmp(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

struct Item {
  std::vector<Rational> lo, hi;
  Rational value;
};

// Visits every elementary cell of the grid spanned by per-axis cut arrays.
void for_each_cell(const std::vector<std::vector<Rational>>& cuts,
                   const std::function<void(const std::vector<Rational>& lo,
                                            const std::vector<Rational>& hi,
                                            const std::vector<Rational>& mid)>& visit) {
  const int dim = static_cast<int>(cuts.size());
  for (const auto& axis_cuts : cuts)
    if (axis_cuts.size() < 2) return;  // no cells at all

  std::vector<size_t> idx(static_cast<size_t>(dim), 0);
  std::vector<Rational> lo(static_cast<size_t>(dim)), hi(lo), mid(lo);
  while (true) {
    for (int ax = 0; ax < dim; ++ax) {
      const auto& c = cuts[static_cast<size_t>(ax)];
      lo[static_cast<size_t>(ax)] = c[idx[static_cast<size_t>(ax)]];
      hi[static_cast<size_t>(ax)] = c[idx[static_cast<size_t>(ax)] + 1];
      mid[static_cast<size_t>(ax)] =
          (lo[static_cast<size_t>(ax)] + hi[static_cast<size_t>(ax)]) / 2;
    }
    visit(lo, hi, mid);
    int ax = dim - 1;
    while (ax >= 0) {
      if (++idx[static_cast<size_t>(ax)] + 1 < cuts[static_cast<size_t>(ax)].size()) break;
      idx[static_cast<size_t>(ax)] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<ValuedBox> items_to_boxes(std::vector<Item> items) {
  std::vector<ValuedBox> out;
  out.reserve(items.size());
  for (auto& it : items)
    out.push_back({RationalBox(std::move(it.lo), std::move(it.hi)), std::move(it.value)});
  return out;
}

}  // namespace

std::vector<ValuedBox> merge_canonical(int dim, std::vector<ValuedBox> boxes) {
  std::vector<Item> items;
  items.reserve(boxes.size());
  for (auto& vb : boxes) items.push_back({vb.box.lo(), vb.box.hi(), vb.value});

  for (int axis = dim - 1; axis >= 0; --axis) {
    const size_t ax = static_cast<size_t>(axis);
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
      if (int c = cmp(a.value, b.value)) return c < 0;
      for (int other = 0; other < dim; ++other) {
        if (other == axis) continue;
        const size_t o = static_cast<size_t>(other);
        if (int c = cmp(a.lo[o], b.lo[o])) return c < 0;
        if (int c = cmp(a.hi[o], b.hi[o])) return c < 0;
      }
      return a.lo[ax] < b.lo[ax];
    });
    std::vector<Item> merged;
    merged.reserve(items.size());
    for (auto& it : items) {
      bool coalesced = false;
      if (!merged.empty()) {
        Item& last = merged.back();
        bool same_slab = last.value == it.value && last.hi[ax] == it.lo[ax];
        for (int other = 0; same_slab && other < dim; ++other) {
          if (other == axis) continue;
          const size_t o = static_cast<size_t>(other);
          same_slab = last.lo[o] == it.lo[o] && last.hi[o] == it.hi[o];
        }
        if (same_slab) {
          last.hi[ax] = it.hi[ax];
          coalesced = true;
        }
      }
      if (!coalesced) merged.push_back(std::move(it));
    }
    items = std::move(merged);
  }

  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    for (size_t o = 0; o < static_cast<size_t>(dim); ++o) {
      if (int c = cmp(a.lo[o], b.lo[o])) return c < 0;
      if (int c = cmp(a.hi[o], b.hi[o])) return c < 0;
    }
    return false;
  });
  return items_to_boxes(std::move(items));
}

std::vector<ValuedBox> overlay_cells(int dim, const std::vector<ValuedBox>& contributions,
                                     const std::optional<RationalBox>& domain, bool keep_zero) {
  std::vector<std::vector<Rational>> cuts(static_cast<size_t>(dim));
  if (domain) {
    for (int ax = 0; ax < dim; ++ax) {
      cuts[static_cast<size_t>(ax)].push_back(domain->lo(ax));
      cuts[static_cast<size_t>(ax)].push_back(domain->hi(ax));
    }
  }
  for (const auto& c : contributions) {
    for (int ax = 0; ax < dim; ++ax) {
      const size_t a = static_cast<size_t>(ax);
      for (const Rational& edge : {c.box.lo(ax), c.box.hi(ax)}) {
        if (domain && (edge < domain->lo(ax) || edge > domain->hi(ax))) continue;
        cuts[a].push_back(edge);
      }
    }
  }
  for (auto& axis_cuts : cuts) sort_unique(axis_cuts);

  std::vector<ValuedBox> cells;
  for_each_cell(cuts, [&](const std::vector<Rational>& lo, const std::vector<Rational>& hi,
                          const std::vector<Rational>& mid) {
    Rational value(0);
    for (const auto& c : contributions)
      if (c.box.contains(mid)) value += c.value;
    if (value != 0 || keep_zero)
      cells.push_back({RationalBox(lo, hi), std::move(value)});
  });
  return cells;
}

}  // namespace detail

RationalBox::RationalBox(std::vector<Rational> lo, std::vector<Rational> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size())
    throw DimensionMismatch("box corners must share a positive dimension");
  for (size_t i = 0; i < lo_.size(); ++i)
    if (!(lo_[i] < hi_[i]))
      throw ValidationError("degenerate box: need lo < hi on axis " + std::to_string(i));
}

Rational RationalBox::volume() const {
  Rational v(1);
  for (size_t i = 0; i < lo_.size(); ++i) v *= hi_[i] - lo_[i];
  return v;
}

bool RationalBox::contains(const std::vector<Rational>& point) const {
  if (point.size() != lo_.size())
    throw DimensionMismatch("point dimension does not match box dimension");
  for (size_t i = 0; i < lo_.size(); ++i)
    if (point[i] < lo_[i] || point[i] >= hi_[i]) return false;
  return true;
}

BandSet BandSet::empty(int dim) {
  if (dim < 1) throw DimensionMismatch("dimension must be at least 1");
  return BandSet(dim, {});
}

BandSet BandSet::from_boxes(int dim, std::vector<RationalBox> boxes) {
  if (dim < 1) throw DimensionMismatch("dimension must be at least 1");
  std::vector<detail::ValuedBox> contributions;
  contributions.reserve(boxes.size());
  for (auto& b : boxes) {
    if (b.dim() != dim)
      throw DimensionMismatch("box dimension does not match set dimension");
    contributions.push_back({std::move(b), Rational(1)});
  }
  auto cells = detail::overlay_cells(dim, contributions, std::nullopt, false);
  for (auto& cell : cells) cell.value = 1;  // union semantics: cover counts collapse
  auto merged = detail::merge_canonical(dim, std::move(cells));
  std::vector<RationalBox> out;
  out.reserve(merged.size());
  for (auto& m : merged) out.push_back(std::move(m.box));
  return BandSet(dim, std::move(out));
}

BandSet BandSet::interval(const Rational& lo, const Rational& hi) {
  return from_boxes(1, {RationalBox({lo}, {hi})});
}

Rational BandSet::measure() const {
  Rational total(0);
  for (const auto& b : boxes_) total += b.volume();
  return total;
}

bool BandSet::contains(const std::vector<Rational>& point) const {
  for (const auto& b : boxes_)
    if (b.contains(point)) return true;
  return false;
}

RationalBox BandSet::bounding_box() const {
  if (boxes_.empty()) throw EmptyBand("bounding box of an empty set");
  std::vector<Rational> lo = boxes_.front().lo(), hi = boxes_.front().hi();
  for (const auto& b : boxes_) {
    for (int ax = 0; ax < dim_; ++ax) {
      const size_t a = static_cast<size_t>(ax);
      lo[a] = std::min(lo[a], b.lo(ax));
      hi[a] = std::max(hi[a], b.hi(ax));
    }
  }
  return RationalBox(std::move(lo), std::move(hi));
}

BandSet boolean_op(const BandSet& a, const BandSet& b, SetOp op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("boolean op on sets of different dimension");
  const int dim = a.dim();

  std::vector<detail::ValuedBox> contributions;
  for (const auto& box : a.boxes()) contributions.push_back({box, Rational(1)});
  for (const auto& box : b.boxes()) contributions.push_back({box, Rational(3)});
  // Normal forms are internally disjoint, so each cell sees at most one box
  // of either operand: value decodes to the membership pair.
  auto cells = detail::overlay_cells(dim, contributions, std::nullopt, false);

  std::vector<detail::ValuedBox> kept;
  for (auto& cell : cells) {
    bool in_a = cell.value == 1 || cell.value == 4;
    bool in_b = cell.value >= 3;
    bool keep = false;
    switch (op) {
      case SetOp::Union: keep = in_a || in_b; break;
      case SetOp::Intersect: keep = in_a && in_b; break;
      case SetOp::Difference: keep = in_a && !in_b; break;
      case SetOp::SymDiff: keep = in_a != in_b; break;
    }
    if (keep) {
      cell.value = 1;
      kept.push_back(std::move(cell));
    }
  }
  auto merged = detail::merge_canonical(dim, std::move(kept));
  std::vector<RationalBox> out;
  out.reserve(merged.size());
  for (auto& m : merged) out.push_back(std::move(m.box));
  return BandSet::from_boxes(dim, std::move(out));
}

BandSet affine_map(const BandSet& set, const std::vector<Rational>& scale,
                   const std::vector<Rational>& shift) {
  const size_t d = static_cast<size_t>(set.dim());
  if (scale.size() != d || shift.size() != d)
    throw DimensionMismatch("affine map coefficients do not match set dimension");
  for (const auto& s : scale)
    if (s == 0) throw ZeroFactor("affine map with zero scale is not invertible");

  std::vector<RationalBox> mapped;
  mapped.reserve(set.boxes().size());
  for (const auto& box : set.boxes()) {
    std::vector<Rational> lo(d), hi(d);
    for (size_t ax = 0; ax < d; ++ax) {
      Rational a = scale[ax] * box.lo(static_cast<int>(ax)) + shift[ax];
      Rational b = scale[ax] * box.hi(static_cast<int>(ax)) + shift[ax];
      if (scale[ax] > 0) {
        lo[ax] = std::move(a);
        hi[ax] = std::move(b);
      } else {  // flipped: image (b,a] is renormalized to [b,a), same up to a null set
        lo[ax] = std::move(b);
        hi[ax] = std::move(a);
      }
    }
    mapped.emplace_back(std::move(lo), std::move(hi));
  }
  return BandSet::from_boxes(set.dim(), std::move(mapped));
}

SetRelation relation(const BandSet& a, const BandSet& b) {
  if (a == b) return SetRelation::Equal;
  if (set_intersect(a, b).is_empty()) return SetRelation::Disjoint;
  if (set_difference(a, b).is_empty()) return SetRelation::SubsetProper;
  if (set_difference(b, a).is_empty()) return SetRelation::SupersetProper;
  return SetRelation::Overlapping;
}

std::string format_band_set(const BandSet& set) {
  std::ostringstream os;
  os << "dim=" << set.dim() << "; ";
  if (set.is_empty()) {
    os << "{}";
    return os.str();
  }
  bool first_box = true;
  for (const auto& box : set.boxes()) {
    if (!first_box) os << " u ";
    first_box = false;
    for (int ax = 0; ax < set.dim(); ++ax) {
      if (ax) os << "x";
      os << "[" << format_rational(box.lo(ax)) << "," << format_rational(box.hi(ax)) << ")";
    }
  }
  return os.str();
}

namespace {

struct Scanner {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* where) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "' " + where + " at offset " +
                       std::to_string(pos) + " in band set text");
  }
  Rational rational_until(std::string_view delims) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && delims.find(text[pos]) == std::string_view::npos) ++pos;
    return parse_rational(text.substr(start, pos - start));
  }
  RationalBox box() {
    std::vector<Rational> lo, hi;
    while (true) {
      expect('[', "to open an interval");
      lo.push_back(rational_until(","));
      expect(',', "between interval endpoints");
      hi.push_back(rational_until(")"));
      expect(')', "to close an interval");
      if (!eat('x')) break;
    }
    return RationalBox(std::move(lo), std::move(hi));
  }
};

}  // namespace

BandSet parse_band_set(std::string_view text) {
  Scanner s{text};
  s.skip_ws();
  if (text.substr(s.pos, 4) != "dim=")
    throw ParseError("band set text must start with 'dim=<d>;'");
  s.pos += 4;
  Rational d = s.rational_until(";");
  if (denominator(d) != 1 || d < 1)
    throw ParseError("band set dimension must be a positive integer");
  int dim = static_cast<int>(to_longlong_checked(numerator(d)));
  s.expect(';', "after the dimension");
  s.skip_ws();
  if (text.substr(s.pos, 2) == "{}") {
    s.pos += 2;
    s.skip_ws();
    if (s.pos != text.size()) throw ParseError("trailing characters after '{}'");
    return BandSet::empty(dim);
  }
  std::vector<RationalBox> boxes;
  while (true) {
    RationalBox box = s.box();
    if (box.dim() != dim)
      throw ParseError("box dimension " + std::to_string(box.dim()) +
                       " does not match declared dim=" + std::to_string(dim));
    boxes.push_back(std::move(box));
    if (!s.eat('u')) break;
  }
  s.skip_ws();
  if (s.pos != text.size())
    throw ParseError("trailing characters at offset " + std::to_string(s.pos) +
                     " in band set text");
  return BandSet::from_boxes(dim, std::move(boxes));
}

RationalBox parse_box(std::string_view text) {
  Scanner s{text};
  RationalBox box = s.box();
  s.skip_ws();
  if (s.pos != text.size()) throw ParseError("trailing characters after box text");
  return box;
}

BandSet recenter_unit_torus(const BandSet& set) {
  const int dim = set.dim();
  const Rational half(1, 2), one(1);
  for (const auto& box : set.boxes())
    for (int ax = 0; ax < dim; ++ax)
      if (box.lo(ax) < 0 || box.hi(ax) > 1)
        throw ValidationError("recenter expects a subset of the unit torus chart [0,1)^d");

  // Split every box at 1/2 along each axis, then shift upper halves by -1.
  std::vector<RationalBox> work(set.boxes()), done;
  while (!work.empty()) {
    RationalBox box = std::move(work.back());
    work.pop_back();
    int split_axis = -1;
    for (int ax = 0; ax < dim && split_axis < 0; ++ax)
      if (box.lo(ax) < half && half < box.hi(ax)) split_axis = ax;
    if (split_axis < 0) {
      done.push_back(std::move(box));
      continue;
    }
    std::vector<Rational> mid_hi = box.hi(), mid_lo = box.lo();
    mid_hi[static_cast<size_t>(split_axis)] = half;
    mid_lo[static_cast<size_t>(split_axis)] = half;
    work.emplace_back(box.lo(), mid_hi);
    work.emplace_back(mid_lo, box.hi());
  }
  std::vector<RationalBox> shifted;
  shifted.reserve(done.size());
  for (const auto& box : done) {
    std::vector<Rational> lo = box.lo(), hi = box.hi();
    for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax)
      if (lo[ax] >= half) {
        lo[ax] -= one;
        hi[ax] -= one;
      }
    shifted.emplace_back(std::move(lo), std::move(hi));
  }
  return BandSet::from_boxes(dim, std::move(shifted));
}

}  // namespace specfold

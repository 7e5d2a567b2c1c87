#include <doctest.h>

#include <vector>

#include "specfold/band_set.hpp"
#include "support/rng.hpp"
#include "support/set_oracles.hpp"

using namespace specfold;

namespace {

Rational Q(const char* s) { return parse_rational(s); }

BandSet two_sided_band() {  // [-1,-1/2) u [1/2,1)
  return parse_band_set("dim=1; [-1,-1/2) u [1/2,1)");
}

}  // namespace

TEST_CASE("adjacent intervals coalesce to one") {
  BandSet s = BandSet::from_boxes(
      1, {RationalBox({Q("0")}, {Q("1")}), RationalBox({Q("1")}, {Q("2")})});
  REQUIRE(s.boxes().size() == 1);
  CHECK(s == BandSet::interval(0, 2));
}

TEST_CASE("overlapping intervals coalesce") {
  BandSet s = BandSet::from_boxes(
      1, {RationalBox({Q("0")}, {Q("3/4")}), RationalBox({Q("1/2")}, {Q("1")})});
  CHECK(s == BandSet::interval(0, 1));
}

TEST_CASE("separated intervals stay separated") {
  BandSet s = two_sided_band();
  REQUIRE(s.boxes().size() == 2);
  CHECK(s.boxes()[0].lo(0) == Q("-1"));
  CHECK(s.boxes()[0].hi(0) == Q("-1/2"));
  CHECK(s.boxes()[1].lo(0) == Q("1/2"));
  CHECK(s.boxes()[1].hi(0) == Q("1"));
  CHECK(s.measure() == 1);
}

TEST_CASE("degenerate boxes are rejected") {
  CHECK_THROWS_AS(RationalBox({Q("1")}, {Q("1")}), ValidationError);
  CHECK_THROWS_AS(RationalBox({Q("2")}, {Q("1")}), ValidationError);
  CHECK_THROWS_AS(RationalBox({Q("0"), Q("0")}, {Q("1")}), DimensionMismatch);
}

TEST_CASE("difference splits an interval") {
  BandSet a = BandSet::interval(0, 1);
  BandSet b = BandSet::interval(Q("1/4"), Q("3/4"));
  BandSet d = set_difference(a, b);

  // Oracle: membership agrees with the pointwise combination everywhere.
  auto bad = oracles::boolean_mismatch(a, b, d, [](bool x, bool y) { return x && !y; });
  CHECK_FALSE(bad.has_value());

  // Frozen expected normal form, confirmed by the oracle above.
  CHECK(d == parse_band_set("dim=1; [0,1/4) u [3/4,1)"));
}

TEST_CASE("boolean operations match pointwise membership") {
  testrng::Gen gen(20260815);
  for (int round = 0; round < 60; ++round) {
    int dim = round % 3 == 2 ? 2 : 1;
    BandSet a = gen.band(dim), b = gen.band(dim);
    auto u = set_union(a, b);
    auto i = set_intersect(a, b);
    auto d = set_difference(a, b);
    auto x = set_symdiff(a, b);
    CHECK_FALSE(oracles::boolean_mismatch(a, b, u, [](bool p, bool q) { return p || q; }).has_value());
    CHECK_FALSE(oracles::boolean_mismatch(a, b, i, [](bool p, bool q) { return p && q; }).has_value());
    CHECK_FALSE(oracles::boolean_mismatch(a, b, d, [](bool p, bool q) { return p && !q; }).has_value());
    CHECK_FALSE(oracles::boolean_mismatch(a, b, x, [](bool p, bool q) { return p != q; }).has_value());

    // Inclusion-exclusion ties the four results together.
    CHECK(u.measure() + i.measure() == a.measure() + b.measure());
    CHECK(x.measure() == u.measure() - i.measure());
  }
}

TEST_CASE("identical indicators give identical normal forms") {
  testrng::Gen gen(77001);
  for (int round = 0; round < 40; ++round) {
    int dim = round % 2 ? 2 : 1;
    BandSet s = gen.band(dim, 4);

    // Re-present the same point set: split every box at an interior point
    // of a random axis, shuffle, and renormalize.
    std::vector<RationalBox> pieces;
    for (const auto& box : s.boxes()) {
      int ax = static_cast<int>(gen.pick(0, dim - 1));
      Rational cut = (box.lo(ax) + box.hi(ax)) / 2;
      std::vector<Rational> hi1 = box.hi(), lo2 = box.lo();
      hi1[static_cast<size_t>(ax)] = cut;
      lo2[static_cast<size_t>(ax)] = cut;
      pieces.emplace_back(box.lo(), hi1);
      pieces.emplace_back(lo2, box.hi());
    }
    std::shuffle(pieces.begin(), pieces.end(), gen.engine());
    BandSet again = BandSet::from_boxes(dim, pieces);
    CHECK(s == again);
    CHECK_FALSE(oracles::indicator_mismatch(s, again).has_value());

    // Normalization is idempotent.
    CHECK(BandSet::from_boxes(dim, s.boxes()) == s);
  }
}

TEST_CASE("two-dimensional normal form is presentation independent") {
  // An L-shape assembled in two different ways.
  BandSet a = BandSet::from_boxes(
      2, {parse_box("[0,2)x[0,1)"), parse_box("[0,1)x[1,2)")});
  BandSet b = BandSet::from_boxes(
      2, {parse_box("[0,1)x[0,2)"), parse_box("[1,2)x[0,1)")});
  CHECK(a == b);
  CHECK(a.measure() == 3);
  CHECK_FALSE(oracles::indicator_mismatch(a, b).has_value());
}

TEST_CASE("measure matches the grid oracle") {
  testrng::Gen gen(424242);
  for (int round = 0; round < 40; ++round) {
    int dim = round % 2 ? 2 : 1;
    BandSet s = gen.band(dim, 5);
    CHECK(s.measure() == oracles::grid_measure(s));
  }
}

TEST_CASE("affine map scales and shifts exactly") {
  BandSet s = two_sided_band();
  BandSet scaled = affine_map(s, {Q("1/3")}, {Q("0")});
  CHECK(scaled == parse_band_set("dim=1; [-1/3,-1/6) u [1/6,1/3)"));
  CHECK(scaled.measure() == Q("1/3"));

  BandSet shifted = affine_map(s, {Q("1")}, {Q("2")});
  CHECK(shifted == parse_band_set("dim=1; [1,3/2) u [5/2,3)"));
}

TEST_CASE("negative scale flips and renormalizes half-open ends") {
  BandSet s = BandSet::interval(Q("1/3"), Q("2/3"));
  BandSet m = affine_map(s, {Q("-1/2")}, {Q("0")});
  CHECK(m == parse_band_set("dim=1; [-1/3,-1/6)"));

  // Oracle: up to the endpoint null set, membership mirrors.  Interior
  // midpoints of the image must map back into the source.
  for (const auto& box : m.boxes()) {
    Rational mid = (box.lo(0) + box.hi(0)) / 2;
    CHECK(s.contains({mid / Q("-1/2")}));
  }
}

TEST_CASE("affine map round trips through its inverse") {
  testrng::Gen gen(90125);
  for (int round = 0; round < 30; ++round) {
    int dim = round % 2 ? 2 : 1;
    BandSet s = gen.band(dim);
    std::vector<Rational> scale, shift, inv_scale, inv_shift;
    Rational jac(1);
    for (int ax = 0; ax < dim; ++ax) {
      Rational sc = gen.nonzero_rational(), sh = gen.rational(-2, 2);
      scale.push_back(sc);
      shift.push_back(sh);
      inv_scale.push_back(1 / sc);
      inv_shift.push_back(-sh / sc);
      jac *= sc < 0 ? -sc : sc;
    }
    BandSet mapped = affine_map(s, scale, shift);
    CHECK(mapped.measure() == jac * s.measure());
    CHECK(affine_map(mapped, inv_scale, inv_shift) == s);
  }
  CHECK_THROWS_AS(affine_map(BandSet::interval(0, 1), {Q("0")}, {Q("0")}), ZeroFactor);
}

TEST_CASE("relation classifies set pairs") {
  BandSet unit = BandSet::interval(0, 1);
  CHECK(relation(unit, BandSet::interval(0, 1)) == SetRelation::Equal);
  CHECK(relation(BandSet::interval(Q("1/2"), 1), unit) == SetRelation::SubsetProper);
  CHECK(relation(unit, BandSet::interval(Q("1/2"), 1)) == SetRelation::SupersetProper);
  CHECK(relation(unit, BandSet::interval(1, 2)) == SetRelation::Disjoint);  // half-open: no touch
  CHECK(relation(unit, BandSet::interval(Q("1/2"), Q("3/2"))) == SetRelation::Overlapping);
  // Empty precedence: empty vs empty is Equal, empty vs anything else Disjoint.
  CHECK(relation(BandSet::empty(1), BandSet::empty(1)) == SetRelation::Equal);
  CHECK(relation(BandSet::empty(1), unit) == SetRelation::Disjoint);
}

TEST_CASE("relation is consistent with difference measures") {
  testrng::Gen gen(5150);
  for (int round = 0; round < 50; ++round) {
    BandSet a = gen.band(1, 3), b = gen.band(1, 3);
    SetRelation r = relation(a, b);
    bool ab_empty = set_difference(a, b).is_empty();
    bool ba_empty = set_difference(b, a).is_empty();
    bool inter_empty = set_intersect(a, b).is_empty();
    switch (r) {
      case SetRelation::Equal: CHECK((ab_empty && ba_empty)); break;
      case SetRelation::Disjoint: CHECK(inter_empty); break;
      case SetRelation::SubsetProper: CHECK((ab_empty && !ba_empty && !inter_empty)); break;
      case SetRelation::SupersetProper: CHECK((ba_empty && !ab_empty && !inter_empty)); break;
      case SetRelation::Overlapping: CHECK((!ab_empty && !ba_empty && !inter_empty)); break;
    }
  }
}

TEST_CASE("text format round trips") {
  const char* samples[] = {
      "dim=1; [-1,-1/2) u [1/2,1)",
      "dim=1; {}",
      "dim=2; [0,1/2)x[0,1) u [1/2,1)x[0,1/4)",
      "dim=1; [0,2)",
  };
  for (const char* text : samples) {
    BandSet s = parse_band_set(text);
    CHECK(format_band_set(s) == text);
    CHECK(parse_band_set(format_band_set(s)) == s);
  }
}

TEST_CASE("text format round trips on random sets") {
  testrng::Gen gen(31337);
  for (int round = 0; round < 40; ++round) {
    int dim = round % 2 ? 2 : 1;
    BandSet s = gen.band(dim, 4);
    CHECK(parse_band_set(format_band_set(s)) == s);
  }
}

TEST_CASE("parser rejects malformed text") {
  CHECK_THROWS_AS(parse_band_set("dim=1 [0,1)"), ParseError);
  CHECK_THROWS_AS(parse_band_set("[0,1)"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=0; {}"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=1; [0,1) u"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=1; [1/0,2)"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=2; [0,1)"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=1; [0,1) extra"), ParseError);
  CHECK_THROWS_AS(parse_band_set("dim=1; [1,1)"), ValidationError);
}

TEST_CASE("recentering shifts the upper half of the torus chart") {
  BandSet folded = parse_band_set("dim=1; [1/9,4/9) u [5/9,8/9)");
  CHECK(recenter_unit_torus(folded) == parse_band_set("dim=1; [-4/9,-1/9) u [1/9,4/9)"));

  // Pieces meeting at the seam merge across it.
  BandSet full = BandSet::interval(0, 1);
  CHECK(recenter_unit_torus(full) == parse_band_set("dim=1; [-1/2,1/2)"));

  CHECK_THROWS_AS(recenter_unit_torus(BandSet::interval(-1, 1)), ValidationError);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK(parse_rational("-4/8") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(format_rational(Rational(-1, 2)) == "-1/2");
  CHECK(format_rational(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK(rational_floor(Rational(-1, 2)) == -1);
  CHECK(rational_floor(Rational(1, 2)) == 0);
  CHECK(rational_ceil(Rational(1, 2)) == 1);
  CHECK(rational_ceil(Rational(-1, 2)) == 0);
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK_THROWS_AS(rational_pow(Rational(0), -1), ZeroFactor);
}

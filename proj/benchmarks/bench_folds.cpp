// Microbenchmarks for the exact layer: box normalization, periodization
// folds in one and two dimensions, and relation queries on fold supports.

#include <benchmark/benchmark.h>

#include <vector>

#include <specfold/band_set.hpp>
#include <specfold/lattice.hpp>
#include <specfold/periodization.hpp>
#include <specfold/rational.hpp>

using namespace specfold;

namespace {

BandSet two_sided_band() { return parse_band_set("dim=1; [-1,-1/2) u [1/2,1)"); }

// Many mutually overlapping intervals on a denominator-7 grid; the interesting
// cost is the sweep that rewrites them as disjoint half-open boxes.
std::vector<RationalBox> overlapping_boxes(long count) {
  std::vector<RationalBox> boxes;
  for (long i = 0; i < count; ++i)
    boxes.emplace_back(std::vector<Rational>{Rational(i, 7)},
                       std::vector<Rational>{Rational(i, 7) + Rational(1, 3)});
  return boxes;
}

void normalize_boxes(benchmark::State& state) {
  const long count = state.range(0);
  std::vector<RationalBox> boxes = overlapping_boxes(count);
  for (auto _ : state) {
    BandSet normalized = BandSet::from_boxes(1, boxes);
    benchmark::DoNotOptimize(normalized);
  }
}
BENCHMARK(normalize_boxes)->Arg(8)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

// Step q dilates the band by q before folding, so the number of integer
// translates that contribute grows linearly with the argument.
void fold_two_sided_band(benchmark::State& state) {
  const long q = state.range(0);
  BandSet band = two_sided_band();
  auto lattice = Lattice(Rational(q));
  for (auto _ : state) {
    TorusStep fold = multiplicity(band, lattice);
    benchmark::DoNotOptimize(fold);
  }
}
BENCHMARK(fold_two_sided_band)->Arg(4)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void fold_plane_band(benchmark::State& state) {
  const long q = state.range(0);
  BandSet band = BandSet::from_boxes(
      2, {RationalBox({Rational(0), Rational(0)}, {Rational(1), Rational(1)}),
          RationalBox({Rational(1, 2), Rational(3, 4)}, {Rational(3, 2), Rational(7, 4)})});
  Lattice lattice(std::vector<Rational>{Rational(q), Rational(q)});
  for (auto _ : state) {
    TorusStep fold = multiplicity(band, lattice);
    benchmark::DoNotOptimize(fold);
  }
}
BENCHMARK(fold_plane_band)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

// Two interleaved combs with n teeth each on slightly different grids, so
// the relation query has to walk every piece.
BandSet comb(long teeth, long denominator) {
  std::vector<RationalBox> boxes;
  for (long i = 0; i < teeth; ++i)
    boxes.emplace_back(std::vector<Rational>{Rational(2 * i, denominator)},
                       std::vector<Rational>{Rational(2 * i + 1, denominator)});
  return BandSet::from_boxes(1, std::move(boxes));
}

void support_relation(benchmark::State& state) {
  const long teeth = state.range(0);
  BandSet first = comb(teeth, 2 * teeth);
  BandSet second = comb(teeth, 2 * teeth + 1);
  for (auto _ : state) {
    SetRelation rel = relation(first, second);
    benchmark::DoNotOptimize(rel);
  }
}
BENCHMARK(support_relation)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace

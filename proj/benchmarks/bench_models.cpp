// Microbenchmarks for the finite-dimensional numeric layer: building the
// sampled analysis matrix, its singular-value frame bounds, the cross Gram
// between two systems, and a full multiplex round trip.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include <Eigen/Core>

#include <specfold/band_set.hpp>
#include <specfold/discrete_model.hpp>
#include <specfold/rational.hpp>

using namespace specfold;

namespace {

BandSet two_sided_band() { return parse_band_set("dim=1; [-1,-1/2) u [1/2,1)"); }

Eigen::VectorXcd random_spectrum(std::mt19937_64& gen, long long size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(size);
  for (long long i = 0; i < size; ++i) {
    double re = normal(gen), im = normal(gen);
    v[i] = std::complex<double>(re, im);
  }
  return v;
}

void build_model(benchmark::State& state) {
  const long period = state.range(0);
  BandSet band = two_sided_band();
  for (auto _ : state) {
    DiscreteModel model(band, Rational(1, 3), Rational(period));
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(build_model)->Arg(12)->Arg(48)->Arg(192)->Arg(384)->Unit(benchmark::kMillisecond);

void numeric_frame_bounds(benchmark::State& state) {
  const long period = state.range(0);
  DiscreteModel model(two_sided_band(), Rational(1, 3), Rational(period));
  for (auto _ : state) {
    auto bounds = frame_bounds_numeric(model);
    benchmark::DoNotOptimize(bounds);
  }
}
BENCHMARK(numeric_frame_bounds)->Arg(12)->Arg(48)->Arg(192)->Unit(benchmark::kMillisecond);

void cross_gram_pair(benchmark::State& state) {
  const long period = state.range(0);
  DiscreteModel first(two_sided_band(), Rational(1, 3), Rational(period));
  DiscreteModel second(BandSet::interval(Rational(-1, 4), Rational(1, 4)), Rational(1, 2),
                       Rational(period));
  for (auto _ : state) {
    double gram = cross_gram(first, second);
    benchmark::DoNotOptimize(gram);
  }
}
BENCHMARK(cross_gram_pair)->Arg(12)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void multiplex_two_channels(benchmark::State& state) {
  const long period = state.range(0);
  DiscreteModel first(two_sided_band(), Rational(1, 3), Rational(period));
  DiscreteModel second(BandSet::interval(Rational(-1, 4), Rational(1, 4)), Rational(1, 2),
                       Rational(period));
  std::mt19937_64 gen(42);
  Eigen::VectorXcd f = random_spectrum(gen, static_cast<long long>(first.frequencies().size()));
  Eigen::VectorXcd g = random_spectrum(gen, static_cast<long long>(second.frequencies().size()));
  for (auto _ : state) {
    MultiplexResult mux = multiplex_roundtrip(first, f, second, g);
    benchmark::DoNotOptimize(mux);
  }
}
BENCHMARK(multiplex_two_channels)->Arg(12)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

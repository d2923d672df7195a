#include <random>

#include <benchmark/benchmark.h>

#include "mpsd/catalog.hpp"
#include "mpsd/oplab.hpp"

using namespace mpsd;

namespace {

GridField noise(const GridSpec& spec, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  GridField f(spec, m);
  for (std::size_t i = 0; i < f.size() * f.block(); ++i) f.data()[i] = cplx(g(rng), g(rng));
  return f;
}

void BM_PsdCheckGram(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const MatrixFunction F = catalog::point_mass_log(2, 1, 2, Point::Ones(1));
  const PointSet X = PointSet::random(1, N, 3.0, 1);
  const BlockGram G = schoenberg_gram(F, X);
  for (auto _ : state) benchmark::DoNotOptimize(psd_check(G.matrix));
}
BENCHMARK(BM_PsdCheckGram)->Arg(8)->Arg(32)->Arg(128);

void BM_Dft(benchmark::State& state) {
  const GridSpec spec(1, 40.0, static_cast<int>(state.range(0)));
  const GridField f = noise(spec, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
}
BENCHMARK(BM_Dft)->Arg(1024)->Arg(4096);

void BM_Dft2d(benchmark::State& state) {
  const GridSpec spec(2, 20.0, 128);
  const GridField f = noise(spec, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
}
BENCHMARK(BM_Dft2d);

void BM_ApplyMultiplier(benchmark::State& state) {
  const GridSpec spec(1, 40.0, 4096);
  const GridField f = noise(spec, 2, 4);
  const MultiplierSymbol S(catalog::point_mass_log(2, 1, 2, Point::Ones(1)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(S, f));
}
BENCHMARK(BM_ApplyMultiplier);

void BM_Convolve(benchmark::State& state) {
  const GridSpec spec(1, 40.0, 4096);
  const GridField f = noise(spec, 2, 5);
  CMatrix W = CMatrix::Identity(2, 2);
  W(1, 1) = 2.0;
  const MatrixMeasure mu = gaussian_grid_measure(spec, W);
  state.counters["atoms"] = static_cast<double>(mu.atoms().size());
  for (auto _ : state) benchmark::DoNotOptimize(convolve(mu, f));
}
BENCHMARK(BM_Convolve);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "sympack/cremona.hpp"
#include "sympack/decomposition_planner.hpp"
#include "sympack/homology_lattice.hpp"
#include "sympack/stability_certifier.hpp"
#include "sympack/weight_expansion.hpp"

using sympack::Rational;

namespace {

void BM_WeightSequence(benchmark::State& state) {
  const Rational a(mpz_class(state.range(0) * 7919 + 1), mpz_class(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sympack::weight_sequence(a));
}
BENCHMARK(BM_WeightSequence)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_ReduceEqualBalls(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sympack::PackingVector v{Rational(1), std::vector<Rational>(n, Rational(1, 3))};
  for (auto _ : state) benchmark::DoNotOptimize(sympack::reduce(v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ReduceEqualBalls)->RangeMultiplier(4)->Range(8, 4096)->Complexity();

void BM_MaxEqualBall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sympack::max_equal_ball(n, Rational(1, 1000000)));
}
BENCHMARK(BM_MaxEqualBall)->DenseRange(5, 9);

void BM_DOmegaSearch(benchmark::State& state) {
  const sympack::BlowupForm form({Rational(1, 2), Rational(1, 3), Rational(1, 5)});
  for (auto _ : state) benchmark::DoNotOptimize(sympack::d_omega_search(form, state.range(0), 1));
}
BENCHMARK(BM_DOmegaSearch)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_LambdaBound(benchmark::State& state) {
  const sympack::Target t{sympack::Ellipsoid{Rational(1), Rational(355, 113)}};
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sympack::derive_lambda_bound(t, bits));
}
BENCHMARK(BM_LambdaBound)->RangeMultiplier(4)->Range(64, 4096);

void BM_Decompose(benchmark::State& state) {
  sympack::Polarization p;
  for (int i = 0; i < state.range(0); ++i) {
    p.curves.push_back({Rational(1) + Rational(i % 5, 10), Rational(1, 10)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(sympack::decompose(p));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(4)->Range(3, 192)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

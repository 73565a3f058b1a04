#include <benchmark/benchmark.h>

#include "quivermod/quivermod.hpp"

#include <random>

using namespace quivermod;

namespace {

QuiverPtr kronecker(int arrows) {
  std::vector<ArrowSpec> specs;
  for (int i = 0; i < arrows; ++i) specs.push_back({"x" + std::to_string(i), 1, 2});
  return std::make_shared<const Quiver>(2, std::move(specs));
}

// Fresh table each iteration so memoization does not hide the work.
void BM_GenericExt(benchmark::State& state) {
  const auto n = state.range(0);
  auto q = kronecker(3);
  for (auto _ : state) {
    GenericExtTable table(q);
    benchmark::DoNotOptimize(table.ext(DimVector({n, n}), DimVector({n, n})));
  }
}
BENCHMARK(BM_GenericExt)->DenseRange(2, 8, 2);

void BM_StableNonempty(benchmark::State& state) {
  const auto n = state.range(0);
  auto q = kronecker(3);
  for (auto _ : state) {
    GenericExtTable table(q);
    benchmark::DoNotOptimize(stable_nonempty(table, DimVector({n, n}), Weight({-1, 1})));
  }
}
BENCHMARK(BM_StableNonempty)->DenseRange(2, 8, 2);

void BM_SemistableOracle(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = static_cast<std::uint64_t>(state.range(1));
  std::mt19937_64 rng(1);
  auto m = random_representation(kronecker(3), Field::prime(p), DimVector({n, n}), rng);
  for (auto _ : state) benchmark::DoNotOptimize(is_semistable(m, Weight({-1, 1})).holds);
}
BENCHMARK(BM_SemistableOracle)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Args({2, 5})->Args({3, 3});

void BM_ExtSpace(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  auto q = kronecker(3);
  const Field f = state.range(1) ? Field::prime(5) : Field::rationals();
  auto m = random_representation(q, f, DimVector({n, n}), rng);
  auto k = random_representation(q, f, DimVector({n, n}), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ext_space(m, k));
}
BENCHMARK(BM_ExtSpace)->ArgsProduct({{1, 2, 3, 4}, {0, 1}});

void BM_SemiInvariant(benchmark::State& state) {
  const auto z = state.range(0);
  std::mt19937_64 rng(3);
  auto q = kronecker(3);
  auto sigma = make_sigma(*q, Weight({-1, 1}), z, 1, 4);
  auto m = random_representation(q, Field::rationals(), DimVector({2, 2}), rng);
  for (auto _ : state) benchmark::DoNotOptimize(semi_invariant(sigma, m));
}
BENCHMARK(BM_SemiInvariant)->DenseRange(1, 3);

}  // namespace
BENCHMARK_MAIN();

// Serial vs OpenMP echelon kernels on the matrices the cohomology code
// actually eliminates, plus dense-ish random products.
#include <benchmark/benchmark.h>

#include <random>

#include "odeinv/cohomology/cohomology.hpp"

using namespace odeinv;

namespace {

linalg::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? linalg::Exec::Serial : linalg::Exec::Parallel;
}

// Second differential of C(g_-, g) for g(k, m), stacked over all degrees.
const linalg::SparseMatrix& differential(int k, int m) {
  static std::map<std::pair<int, int>, linalg::SparseMatrix> cache;
  auto it = cache.find({k, m});
  if (it == cache.end()) {
    auto g = GradedLieAlgebra::build(k, m);
    CochainComplex cx(g, g.negative_part(), 3);
    it = cache.emplace(std::make_pair(k, m), cx.differential(2).matrix).first;
  }
  return it->second;
}

linalg::SparseMatrix random_product(int n, int inner) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> val(-9, 9);
  std::vector<linalg::Triplet> a;
  std::vector<linalg::Triplet> b;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < inner; ++c) a.push_back({r, c, val(rng)});
  }
  for (int r = 0; r < inner; ++r) {
    for (int c = 0; c < n; ++c) b.push_back({r, c, val(rng)});
  }
  return linalg::SparseMatrix::from_triplets(n, inner, a) * linalg::SparseMatrix::from_triplets(inner, n, b);
}

void BM_DifferentialRank(benchmark::State& state) {
  const auto& d = differential(static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
  std::size_t r = 0;
  for (auto _ : state) {
    r = linalg::rank(d, exec_of(state));
    benchmark::DoNotOptimize(r);
  }
  state.counters["rows"] = d.rows();
  state.counters["cols"] = d.cols();
  state.counters["rank"] = static_cast<double>(r);
}

void BM_RandomRank(benchmark::State& state) {
  const auto m = random_product(static_cast<int>(state.range(1)), static_cast<int>(state.range(1)) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::rank(m, exec_of(state)));
}

void BM_EffectivePart(benchmark::State& state) {
  auto g = GradedLieAlgebra::build(static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(effective_e02(g, exec_of(state)).dims.total());
}

}  // namespace

// Arguments: {0 serial | 1 parallel, k, m}.
BENCHMARK(BM_DifferentialRank)
    ->ArgsProduct({{0, 1}, {3}, {2, 3}})
    ->ArgsProduct({{0, 1}, {5}, {2}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomRank)->ArgsProduct({{0, 1}, {60, 120}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EffectivePart)->ArgsProduct({{0, 1}, {4}, {3}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "macroreal/ontic.hpp"
#include "macroreal/overlap.hpp"
#include "macroreal/search.hpp"
#include "macroreal/support.hpp"

using namespace macroreal;

namespace {

std::vector<double> random_mass(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> out(n);
  double sum = 0.0;
  for (double& x : out) {
    x = exp1(rng);
    sum += x;
  }
  for (double& x : out) x /= sum;
  return out;
}

void BM_SymmetricOverlap64(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto f = random_mass(rng, 64);
  const auto g = random_mass(rng, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_overlap(f, g));
  }
}
BENCHMARK(BM_SymmetricOverlap64);

void BM_SupportCurve64(benchmark::State& state) {
  std::mt19937_64 rng(2);
  Density f_P, f_q;
  f_P.mass = random_mass(rng, 64);
  f_q.mass = random_mass(rng, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(support_curve(f_P, f_q));
  }
}
BENCHMARK(BM_SupportCurve64);

void BM_PushForward64(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Density f;
  f.mass = random_mass(rng, 64);
  MarkovKernel kernel;
  kernel.rows.resize(64);
  for (auto& row : kernel.rows) row = random_mass(rng, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(push_forward(kernel, f));
  }
}
BENCHMARK(BM_PushForward64);

void BM_SupOverlapLP(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Density f_P;
  f_P.mass = random_mass(rng, n);
  std::vector<Density> gens(3);
  for (auto& g : gens) g.mass = random_mass(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_overlap(f_P, gens, 1.5));
  }
}
BENCHMARK(BM_SupOverlapLP)->Arg(16)->Arg(64);

void BM_SearchObjective(benchmark::State& state) {
  FragmentParams params = fragment2_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(params));
  }
}
BENCHMARK(BM_SearchObjective);

void BM_SearchRestart(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_gap(1, 7));
  }
}
BENCHMARK(BM_SearchRestart);

}  // namespace

BENCHMARK_MAIN();

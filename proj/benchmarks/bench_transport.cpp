#include <vector>

#include <benchmark/benchmark.h>

#include "bosestat/measure.hpp"
#include "bosestat/rng.hpp"

namespace {

using bosestat::ot::DiscreteMeasure;

DiscreteMeasure random_measure(int k, std::uint64_t seed) {
  bosestat::rng::Stream stream(seed);
  std::vector<double> atoms(k), weights(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    atoms[i] = 10.0 * stream.uniform() - 5.0;
    weights[i] = stream.uniform() + 1e-3;
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure::from_points(std::move(atoms), std::move(weights));
}

void BM_Wasserstein1(benchmark::State& state) {
  const int k = int(state.range(0));
  const auto a = random_measure(k, 11);
  const auto b = random_measure(k, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bosestat::ot::wasserstein_1_cdf(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Wasserstein1)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_OptimalPlan(benchmark::State& state) {
  const int k = int(state.range(0));
  const auto a = random_measure(k, 21);
  const auto b = random_measure(k, 22);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bosestat::ot::optimal_plan(a, b));
  }
}
BENCHMARK(BM_OptimalPlan)->RangeMultiplier(4)->Range(4, 1024);

void BM_FromSamples(benchmark::State& state) {
  bosestat::rng::Stream stream(31);
  std::vector<double> samples(std::size_t(state.range(0)));
  for (double& s : samples) s = stream.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DiscreteMeasure::from_samples(samples));
  }
}
BENCHMARK(BM_FromSamples)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace

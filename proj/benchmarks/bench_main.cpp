#include <benchmark/benchmark.h>

#include "nhrm/experiment/generators.hpp"
#include "nhrm/matrix_model.hpp"
#include "nhrm/random.hpp"
#include "nhrm/structure/decomposition.hpp"
#include "nhrm/trace/cycle_shape.hpp"
#include "nhrm/trace/random_instances.hpp"
#include "nhrm/trace/trace_moment.hpp"

namespace {

void BM_EvenShapes(benchmark::State& st) {
  const auto p = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(nhrm::trace::enumerate_even_shapes(p));
}
BENCHMARK(BM_EvenShapes)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ExactTraceMoment(benchmark::State& st) {
  auto rng = nhrm::make_engine(3);
  const auto b = nhrm::trace::random_rational_symmetric(rng, 4, true);
  const auto p = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(nhrm::trace::exact_trace_moment_gaussian(b, p));
}
BENCHMARK(BM_ExactTraceMoment)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_SampleAndOpNorm(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto prof = nhrm::experiment::builtin_profile("band", {{"n", n}, {"w", 3}}).profile;
  std::uint64_t seed = 0;
  for (auto _ : st) {
    const auto x = nhrm::sample_gaussian(prof, seed++).entries;
    benchmark::DoNotOptimize(nhrm::schatten_norm(x, nhrm::PNorm::infinity()));
  }
}
BENCHMARK(BM_SampleAndOpNorm)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto prof = nhrm::experiment::builtin_profile("power_decay", {{"n", n}, {"gamma", 0.35}}).profile;
  for (auto _ : st) benchmark::DoNotOptimize(nhrm::structure::greedy_rearrangement(prof));
}
BENCHMARK(BM_Greedy)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

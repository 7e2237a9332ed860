#include <benchmark/benchmark.h>

#include "aec/me_analysis.hpp"
#include "aec/scenario.hpp"

using namespace aec;

namespace {

void BM_Scenario(benchmark::State& state) {
  ScenarioConfig config;
  config.scheme = *SchemeSpec::parse("ae(3,2,5)");
  config.num_data_blocks = state.range(0);
  config.n_locations = 100;
  config.fraction = 0.3;
  config.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Scenario)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_MinMeSearch(benchmark::State& state) {
  const CodeParams params = CodeParams::validate(3, 1, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_me_size(params, 2));
  }
}
BENCHMARK(BM_MinMeSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

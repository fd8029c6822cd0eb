// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "curvlab/catalog.hpp"
#include "curvlab/functionals.hpp"
#include "curvlab/weitzenboeck.hpp"

using namespace curvlab;

namespace {

void node_evaluation(benchmark::State& state, Execution execution) {
  const CatalogEntry e = load("cp2_fs");
  const QuadratureScheme scheme = make_scheme(e.desc, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_nodes(e.desc, &*e.j, scheme, execution));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(scheme.nodes.size()));
}

void weitzenboeck_grid(benchmark::State& state, Execution execution) {
  const CatalogEntry e = load("t4_flat");
  const FormField alpha = named_field(e, "bump");
  const GridSpec grid = default_grid(e.desc, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(weitzenboeck_analysis(e.desc, alpha, grid, execution));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

}  // namespace

BENCHMARK_CAPTURE(node_evaluation, serial, Execution::Serial)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(node_evaluation, parallel, Execution::Parallel)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(weitzenboeck_grid, serial, Execution::Serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(weitzenboeck_grid, parallel, Execution::Parallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// OpenMP kernels vs their serial references. Run with --benchmark_min_time=...
// to tighten; defaults are fine for a quick comparison.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "mulab/corpus.hpp"
#include "mulab/dynamics.hpp"
#include "mulab/linalg.hpp"
#include "mulab/rng.hpp"

namespace {

using namespace mulab;

const std::vector<double> kGrid = {1.2, 1.5, 1.8, 2.0};

void sweep_parallel(benchmark::State& state) {
  const auto runs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto stats = dynamics::sweep(dynamics::MapKind::interaction(2.0), kGrid, runs, 1,
                                 2000, 1.0, dynamics::RootPolicy::random_sign(0.5));
    benchmark::DoNotOptimize(stats);
  }
}

void sweep_serial_ref(benchmark::State& state) {
  const auto runs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto stats =
        dynamics::sweep_serial(dynamics::MapKind::interaction(2.0), kGrid, runs, 1,
                               2000, 1.0, dynamics::RootPolicy::random_sign(0.5));
    benchmark::DoNotOptimize(stats);
  }
}

corpus::DocMatrix make_matrix(std::size_t docs, std::size_t vars) {
  corpus::DocMatrix m;
  m.kind = corpus::MatrixKind::Words;
  SplitMix64 rng(7);
  for (std::size_t d = 0; d < docs; ++d) m.doc_ids.push_back("d" + std::to_string(d));
  for (std::size_t v = 0; v < vars; ++v) m.variables.push_back("v" + std::to_string(v));
  m.cells.resize(docs * vars);
  for (auto& cell : m.cells) cell = static_cast<std::uint32_t>(rng.next() % 6);
  return m;
}

void correlation_parallel(benchmark::State& state) {
  const auto m = make_matrix(256, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = linalg::correlation(m);
    benchmark::DoNotOptimize(r);
  }
}

void correlation_serial_ref(benchmark::State& state) {
  const auto m = make_matrix(256, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = linalg::correlation_serial(m);
    benchmark::DoNotOptimize(r);
  }
}

BENCHMARK(sweep_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_serial_ref)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(correlation_parallel)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(correlation_serial_ref)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "codec/measures.hpp"
#include "codec/pipeline.hpp"
#include "codec/refinement.hpp"
#include "codec/regularity.hpp"
#include "codec/synth.hpp"

using namespace codec;

namespace {

SynthGraph planted(std::size_t n) {
  SynthParams params{n, 10, 0.2, 0.0, true, false, 42};
  return generate(params);
}

void BM_pair_density(benchmark::State& state) {
  const std::size_t m = state.range(0);
  const SynthGraph s = planted(2 * m);
  VertexClass a, b;
  for (Vertex v = 0; v < m; ++v) a.push_back(v);
  for (Vertex v = m; v < 2 * m; ++v) b.push_back(v);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_density(s.g, a, b));
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(m) * int64_t(m));
}
BENCHMARK(BM_pair_density)->Arg(64)->Arg(256);

void BM_check_pair(benchmark::State& state) {
  const std::size_t m = state.range(0);
  const SynthGraph s = planted(2 * m);
  VertexClass a, b;
  for (Vertex v = 0; v < m; ++v) a.push_back(v);
  for (Vertex v = m; v < 2 * m; ++v) b.push_back(v);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_pair(s.g, a, b, 0.25));
  }
}
BENCHMARK(BM_check_pair)->Arg(32)->Arg(128);

void BM_refine_generation(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SynthGraph s = planted(n);
  Partition p = initial_partition(s.g, 1);
  p.eps = 0.25;
  const IrregularityReport report = count_irregular(s.g, p, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine(s.g, p, report.verdicts, 7, {}));
  }
}
BENCHMARK(BM_refine_generation)->Arg(256)->Arg(1024);

void BM_median_filter(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SynthGraph s = planted(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(median_filter(s.g, 5));
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n) * int64_t(n));
}
BENCHMARK(BM_median_filter)->Arg(256)->Arg(512);

void BM_kvs_predict(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SynthGraph s = planted(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kvs_predict(s.g, s.labels, 9));
  }
}
BENCHMARK(BM_kvs_predict)->Arg(512)->Arg(1024);

void BM_run_codec(benchmark::State& state) {
  const SynthGraph s = planted(state.range(0));
  CodecConfig cfg;
  cfg.seed = 42;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_codec(s.g, cfg));
  }
}
BENCHMARK(BM_run_codec)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

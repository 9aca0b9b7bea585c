#include <benchmark/benchmark.h>

#include "corank/intersect.hpp"
#include "corank/spec_format.hpp"
#include "corank/sumset_sweep.hpp"
#include "corank/witnesses.hpp"

using namespace corank;

static void BM_KeySweep(benchmark::State& state) {
  SweepEngine engine(builtin_group("c" + std::to_string(state.range(0))));
  std::int64_t pairs = 0;
  for (auto _ : state) {
    auto res = engine.sweep(SweepEngine::Check::key_inequality, 2, 1);
    pairs = res.pairs_checked;
    benchmark::DoNotOptimize(res.violations.size());
  }
  state.counters["pairs"] = static_cast<double>(pairs);
  state.counters["pairs/s"] = benchmark::Counter(
      static_cast<double>(pairs) * state.iterations(), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_KeySweep)->Arg(6)->Arg(8)->Arg(10);

static void BM_SoundnessSweep(benchmark::State& state) {
  SweepEngine engine(builtin_group("c" + std::to_string(state.range(0))));
  for (auto _ : state) {
    auto res = engine.sweep(SweepEngine::Check::soundness, 2, 1);
    benchmark::DoNotOptimize(res.violations.size());
  }
}
BENCHMARK(BM_SoundnessSweep)->Arg(8)->Arg(10);

static void BM_KeySweepParallel(benchmark::State& state) {
  SweepEngine engine(builtin_group("c10"));
  for (auto _ : state) {
    auto res = engine.sweep(SweepEngine::Check::key_inequality, 2,
                            static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(res.violations.size());
  }
}
BENCHMARK(BM_KeySweepParallel)->Arg(1)->Arg(2)->Arg(4);

static void BM_TransformSamples(benchmark::State& state) {
  SweepEngine engine(builtin_group("s4"));
  for (auto _ : state) {
    auto res = engine.sweep_transform_samples(state.range(0), 2, 42, 1);
    benchmark::DoNotOptimize(res.violations.size());
  }
}
BENCHMARK(BM_TransformSamples)->Arg(1000)->Arg(10000);

static void BM_IntersectModular(benchmark::State& state) {
  auto spec = std::make_shared<FreeProductSpec>();
  spec->factors = {make_cyclic_factor("x", 2), make_cyclic_factor("y", 3)};
  RawAssignment two;
  two.degree = 3;
  two.factor_gen_images = {{parse_cycles("(1 2)", 3)}, {parse_cycles("(1 2 3)", 3)}};
  RawAssignment three;
  three.degree = 4;
  three.factor_gen_images = {{parse_cycles("(1 2)(3 4)", 4)},
                             {parse_cycles("(1 2 3)", 4)}};
  SubgroupHandle h = from_kernel(spec, two);
  SubgroupHandle k = from_kernel(spec, three);
  for (auto _ : state) {
    auto rep = intersect_all(h, k);
    benchmark::DoNotOptimize(rep.total);
  }
}
BENCHMARK(BM_IntersectModular);

static void BM_Example2p5(benchmark::State& state) {
  for (auto _ : state) {
    auto run = run_witness(example_2p(5));
    benchmark::DoNotOptimize(run.report.total);
  }
}
BENCHMARK(BM_Example2p5);

BENCHMARK_MAIN();

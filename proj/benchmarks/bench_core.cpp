#include <benchmark/benchmark.h>

#include <random>

#include "cpdshift/backext.hpp"
#include "cpdshift/positivity.hpp"
#include "cpdshift/qpoly.hpp"
#include "cpdshift/sequences.hpp"

using namespace cpdshift;

namespace {

RepresentingTriplet bench_triplet() {
  return RepresentingTriplet(
      1.0, 0.25,
      DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{{0.4, 0.6}, {2.2, 0.9}}));
}

void BM_QEval(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  double x = 0.999;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_eval(n, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_QEval)->Arg(8)->Arg(64)->Arg(512);

void BM_Synthesize(benchmark::State& state) {
  const RepresentingTriplet t = bench_triplet();
  const std::size_t horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(t, 1.0, horizon));
  }
}
BENCHMARK(BM_Synthesize)->Arg(64)->Arg(256);

void BM_CpdWindow(benchmark::State& state) {
  const CpdSequence gamma = synthesize(bench_triplet(), 1.0, 64);
  const std::size_t window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_cpd_window(gamma, window));
  }
}
BENCHMARK(BM_CpdWindow)->Arg(8)->Arg(12)->Arg(16);

void BM_Classify(benchmark::State& state) {
  const DiscreteMeasure nu = DiscreteMeasure::dirac(0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(0.0, nu));
  }
}
BENCHMARK(BM_Classify);

void BM_BfrakOracle(benchmark::State& state) {
  const DiscreteMeasure nu = DiscreteMeasure::dirac(0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(b_frak_oracle(0.0, nu, 512, 1e-8));
  }
}
BENCHMARK(BM_BfrakOracle);

void BM_ExtendShiftN(benchmark::State& state) {
  const RepresentingTriplet t(1.35, 0.0,
                              DiscreteMeasure(std::vector<DiscreteMeasure::Atom>{
                                  {2.35 / 3.0, 0.91125}, {5.0 * 2.35 / 3.0, 0.91125}}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extend_shift_n(t, 8));
  }
}
BENCHMARK(BM_ExtendShiftN);

}  // namespace

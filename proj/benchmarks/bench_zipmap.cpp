#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zipmap/map_builder.hpp"
#include "zipmap/newton_inverse.hpp"

using namespace zipmap;

namespace {

std::vector<ExtendedComplex> inverted_ellipse(int n) {
  std::vector<ExtendedComplex> pts;
  for (int j = 0; j < n; ++j) {
    const Complex z = 0.95 * std::polar(1.0, 2 * std::numbers::pi * j / n);
    pts.push_back(z / (1.0 + z * z));
  }
  return pts;
}

template <Variant V>
void BM_Build(benchmark::State& state) {
  const auto pts = inverted_ellipse(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build(V, pts));
  state.SetComplexityN(state.range(0));
}

void BM_EvalForward(benchmark::State& state) {
  const auto p = build_geodesic(inverted_ellipse(static_cast<int>(state.range(0))));
  const Complex z(0.1, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(eval_forward(p, z));
  state.SetComplexityN(state.range(0));
}

void BM_UnitSlitInverse(benchmark::State& state) {
  const NewtonConfig cfg;
  const Complex v(0.3, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(unit_slit_inverse(v, 0.37, cfg));
}

}  // namespace

BENCHMARK(BM_Build<Variant::Geodesic>)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Build<Variant::Slit>)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Build<Variant::Zipper>)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvalForward)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity();
BENCHMARK(BM_UnitSlitInverse);
BENCHMARK_MAIN();

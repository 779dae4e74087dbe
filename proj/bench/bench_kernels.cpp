#include <benchmark/benchmark.h>

#include "qastab/defect.hpp"
#include "qastab/direct.hpp"
#include "qastab/kernels.hpp"

namespace {

using qastab::kernels::Exec;

const qastab::EvaluableFn& perturbed() {
  static const auto f = qastab::parse_function("poly:0,1,0,0,1+noise:0.001,none,7");
  return f;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_DefectNorms(benchmark::State& state) {
  const auto pairs = qastab::random_pairs(static_cast<std::size_t>(state.range(1)), {-10, 10}, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qastab::kernels::defect_norms(perturbed(), qastab::Equation::mixed, pairs.xs, pairs.ys, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_SupDistance(benchmark::State& state) {
  const auto grid = qastab::make_grid({{-10, 10}}, static_cast<std::size_t>(state.range(1)),
                                      qastab::GridScheme::uniform);
  const auto g = qastab::parse_function("poly:0,1,0,0,1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(qastab::kernels::sup_distance(perturbed(), g, grid.points, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_ExtractMixed(benchmark::State& state) {
  std::vector<qastab::Point> points;
  for (int i = 1; i <= state.range(1); ++i) points.push_back(qastab::Point{0.01 * i});
  qastab::ExtractionOptions opt;
  opt.exec = exec_of(state);
  opt.n_max = 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qastab::extract_mixed(perturbed(), points, qastab::Strategy::forward, opt));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

// First argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_DefectNorms)->ArgsProduct({{0, 1}, {1000, 100000}})->UseRealTime();
BENCHMARK(BM_SupDistance)->ArgsProduct({{0, 1}, {1000, 100000}})->UseRealTime();
BENCHMARK(BM_ExtractMixed)->ArgsProduct({{0, 1}, {64, 1024}})->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

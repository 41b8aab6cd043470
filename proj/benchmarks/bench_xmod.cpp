#include <benchmark/benchmark.h>

#include "xmod/adjust.hpp"
#include "xmod/butterfly.hpp"
#include "xmod/catalog.hpp"
#include "xmod/cochains.hpp"

using namespace xmod;

namespace {

Cochain diagonal_form(std::size_t n) {
  Cochain b(n, 2, 1);
  for (std::size_t i = 0; i < n; ++i) b.at({i, i}, 0) = static_cast<long>(i + 1);
  return b;
}

// Vanishes on the center, hence invariant.
Cochain heisenberg_form() {
  Cochain b(3, 2, 1);
  b.at({0, 0}, 0) = 1;
  b.at({1, 1}, 0) = 2;
  return b;
}

}  // namespace

static void CohomologyAbelian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LieAlgebra l = abelian(n);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(l, 1, n / 2).dim());
}
BENCHMARK(CohomologyAbelian)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void CohomologyGl(benchmark::State& state) {
  const LieAlgebra l = gl(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(l, 1, 3).dim());
}
BENCHMARK(CohomologyGl)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void PathTruncationBuild(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(path_truncation_module(abelian(2), diagonal_form(2), d).module);
}
BENCHMARK(PathTruncationBuild)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void KLClassTruncation(benchmark::State& state) {
  const PathTruncation tr =
      path_truncation_module(heisenberg3(), heisenberg_form(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kl_class(*tr.module).trivial());
}
BENCHMARK(KLClassTruncation)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void AdjustmentExistsMatrixAut(benchmark::State& state) {
  const Example e = matrix_aut(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjustment_exists(*e.module).has_value());
}
BENCHMARK(AdjustmentExistsMatrixAut)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void ClassifyAdjustmentsTorus(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Example e = categorical_torus(Matrix::identity(n));
  for (auto _ : state) benchmark::DoNotOptimize(classify_adjustments(*e.module, *e.section).has_value());
}
BENCHMARK(ClassifyAdjustmentsTorus)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void ConnectAndTransfer(benchmark::State& state) {
  const PathTruncation t1 = path_truncation_module(abelian(2), diagonal_form(2), 1);
  const PathTruncation t2 = path_truncation_module(abelian(2), diagonal_form(2), static_cast<std::size_t>(state.range(0)));
  const Matrix s1 = t1.canonical_section(), s2 = t2.canonical_section();
  const Cochain eta1 = t1.adjustment(s1);
  for (auto _ : state) {
    const auto d = connect_same_kl(t1.module, default_splitting(*t1.module), t2.module, default_splitting(*t2.module));
    const CocycleData neat = neat_section_adjust(*d, s1, s2).data;
    benchmark::DoNotOptimize(transfer_adjustment(neat, s1, s2, eta1));
  }
}
BENCHMARK(ConnectAndTransfer)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void ExtractReconstruct(benchmark::State& state) {
  const ModulePtr m = product_module(2, heisenberg3()).module;
  Cochain xi(3, 2, 2);
  xi.at({0, 1}, 0) = 1;
  xi.at({1, 0}, 0) = -1;
  const CocycleData d = xi_data(m, xi);
  for (auto _ : state) {
    const Butterfly b = reconstruct(d);
    benchmark::DoNotOptimize(extract(b, canonical_section(b)).lambda);
  }
}
BENCHMARK(ExtractReconstruct)->Unit(benchmark::kMicrosecond);

static void BchHeisenberg(benchmark::State& state) {
  const LieAlgebra h = heisenberg3();
  const Vec x{Q(1), frac(2, 3), Q(-1)}, y{frac(-1, 2), Q(3), Q(2)};
  for (auto _ : state) benchmark::DoNotOptimize(bch(h, x, y));
}
BENCHMARK(BchHeisenberg)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels on fixed census workloads.

#include <benchmark/benchmark.h>

#include "involkit/census.hpp"
#include "involkit/involution.hpp"
#include "involkit/preserver.hpp"

using namespace involkit;

namespace {

Exec exec_arg(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

// Involutions times B_3 over GF(3): the closure step that produces C_3.
void BM_ProductClosure(benchmark::State& state) {
  const auto f = FieldSpec::make(3, 1);
  const auto& inv = involution_set(f, 3);
  const auto& b = bfs_set(SetId::B, f, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::product_closure(b.space(), inv.keys(), b.keys(), exec_arg(state)));
  label(state);
}

// Lambda census over GF(2), n = 3.
void BM_LeftStabilizer(benchmark::State& state) {
  const auto f = FieldSpec::make(2, 1);
  const auto& c = bfs_set(SetId::C, f, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::left_stabilizer(c.space(), c.keys(), exec_arg(state)));
  label(state);
}

// Exhaustive three-involution search for 2I over GF(7): every involution is tried.
void BM_FirstHitSearch(benchmark::State& state) {
  const auto f = FieldSpec::make(7, 1);
  const Matrix a = Matrix::scalar(f, 3, 2);
  k_involutions_search(a, 3, Exec::serial);
  for (auto _ : state) benchmark::DoNotOptimize(k_involutions_search(a, 3, exec_arg(state)));
  label(state);
}

// Exhaustive preservation check of D_3 over GF(3).
void BM_PreservesSet(benchmark::State& state) {
  const auto f = FieldSpec::make(3, 1);
  const Matrix p = Matrix::from_ints(f, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  const auto map = map_from_form(PreserverForm::conjugation(p, 1, true));
  bfs_set(SetId::D, f, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(preserves_set(map, SetId::D, CheckMode::exhaustive(), exec_arg(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_ProductClosure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeftStabilizer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstHitSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservesSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

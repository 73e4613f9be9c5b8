#include <benchmark/benchmark.h>

#include "twh/dplus.hpp"
#include "twh/formal.hpp"
#include "twh/suite.hpp"

using namespace twh;

namespace {

// presets by argument: 0 neg1 d=1, 1 neg1 d=2, 2 cyclic d=3
Heis setup_arg(int64_t i) {
  switch (i) {
    case 0: return make_setup(preset("neg1", 1, 8));
    case 1: return make_setup(preset("neg1", 2, 8));
    default: return make_setup(preset("cyclic", 3, 8));
  }
}

void BM_DeltaIdentity2(benchmark::State& st) {
  int p = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify_delta_identity_2(p, p - 1, st.range(1)).ok());
}
BENCHMARK(BM_DeltaIdentity2)->Args({1, 3})->Args({2, 3})->Args({3, 3})->Args({3, 5})->Unit(benchmark::kMillisecond);

void BM_GClosed(benchmark::State& st) {
  Heis h = setup_arg(2);
  int64_t m = st.range(0);
  for (auto _ : st)
    for (int64_t n = 1; n <= m; ++n) benchmark::DoNotOptimize(g_value(h, 1, m, 2, n));
}
BENCHMARK(BM_GClosed)->Arg(3)->Arg(6)->Arg(12);

void BM_GOracle(benchmark::State& st) {
  Heis h = setup_arg(2);
  int64_t m = st.range(0);
  for (auto _ : st)
    for (int64_t n = 1; n <= m; ++n) benchmark::DoNotOptimize(g_oracle(h, 1, m, 2, n));
}
BENCHMARK(BM_GOracle)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// all modes |N| <= 3 of every algebra monomial of weight <= 3 on the pieces <= 2
template <class Map>
void run_modes(benchmark::State& st, const Heis& h, const Map& y) {
  const int p = h.setup.p;
  auto vs = basis_up_to(h.V.with_cut(kNoCut), 3);
  auto ws = basis_up_to(h.M.with_cut(kNoCut), 2 * p);
  size_t n = 0;
  for (const auto& b : vs)
    for (const auto& c : ws)
      for (int64_t k = -3 * p; k <= 3 * p; ++k) {
        benchmark::DoNotOptimize(y.mode(FockVector::basis(b, 1), k, FockVector::basis(c, p)));
        ++n;
      }
  st.counters["modes"] = static_cast<double>(n);
}

void BM_PairingModes(benchmark::State& st) {
  Heis h = setup_arg(st.range(0));
  PairingMap y(h);
  for (auto _ : st) run_modes(st, h, y);
}
BENCHMARK(BM_PairingModes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_DeltaRouteModes(benchmark::State& st) {
  Heis h = setup_arg(st.range(0));
  DeltaMap y(h);
  for (auto _ : st) run_modes(st, h, y);
}
BENCHMARK(BM_DeltaRouteModes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

// a fresh map each round so the memo does not hide the cost
void BM_RecursiveModes(benchmark::State& st) {
  Heis h = setup_arg(st.range(0));
  int k = 0;
  for (auto _ : st) {
    RecursiveMap y(h);
    run_modes(st, h, y);
    k = std::max(k, y.max_k());
  }
  st.counters["max_k"] = k;
}
BENCHMARK(BM_RecursiveModes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TwistedJacobi(benchmark::State& st) {
  Heis h = setup_arg(st.range(0));
  PairingMap y(h);
  NopMap yv(h.V.with_cut(kNoCut));
  Context c = twisted_context(h, y, yv);
  auto pr = paired_indices(h);
  for (auto _ : st)
    benchmark::DoNotOptimize(check_jacobi(c, generator(pr[0]), generator(pr[1]), h.M.vacuum(), st.range(1)).ok());
}
BENCHMARK(BM_TwistedJacobi)->Args({0, 2})->Args({0, 3})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_VirasoroUntwisted(benchmark::State& st) {
  Heis h = make_setup(preset("identity", static_cast<int>(st.range(0)), 8));
  for (auto _ : st) benchmark::DoNotOptimize(check_virasoro_matrices(h, false, 2, st.range(1)).ok());
}
BENCHMARK(BM_VirasoroUntwisted)->Args({1, 6})->Args({2, 4})->Args({2, 6})->Unit(benchmark::kMillisecond);

void BM_LbarBracket(benchmark::State& st) {
  int r = static_cast<int>(st.range(0));
  for (auto _ : st)
    for (int64_t m = -3; m <= 3; ++m)
      benchmark::DoNotOptimize(expand_in_Lbar(bracket(Lbar_symbol(m, r), Lbar_symbol(1 - m, r))));
}
BENCHMARK(BM_LbarBracket)->DenseRange(0, 4);

void BM_RepTwisted(benchmark::State& st) {
  Heis h = setup_arg(st.range(0));
  for (auto _ : st) {
    RepCache rc(h, true);
    benchmark::DoNotOptimize(check_rep_bracket(rc, Lbar_symbol(2, 1), Lbar_symbol(-1, 2), 3 * h.setup.p).ok());
  }
}
BENCHMARK(BM_RepTwisted)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Corollary(benchmark::State& st) {
  Heis h = setup_arg(2);
  for (auto _ : st) benchmark::DoNotOptimize(check_corollary(h, static_cast<int>(st.range(0))).ok());
}
BENCHMARK(BM_Corollary)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

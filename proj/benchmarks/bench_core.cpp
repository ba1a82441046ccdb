#include <benchmark/benchmark.h>

#include "iwc/imquad.hpp"
#include "iwc/lseries.hpp"
#include "iwc/quartic.hpp"
#include "iwc/realquad.hpp"

using namespace iwc;

static void BM_ClassGroup(benchmark::State& st) {
  const std::int64_t D = -8 * st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(class_group(D));
}
BENCHMARK(BM_ClassGroup)->Arg(127)->Arg(1999)->Arg(9967);

static void BM_Log2adic(benchmark::State& st) {
  const LocalField F = LocalField::unramified();
  const LocalQuad u = LocalQuad::from_rat(F, 1, static_cast<int>(st.range(0))) +
                      LocalQuad::make(F, 1, 12345, 6789, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(log_2adic(u));
}
BENCHMARK(BM_Log2adic)->Arg(64)->Arg(192)->Arg(512);

static void BM_FundamentalUnitReal(benchmark::State& st) {
  const Int q = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(fundamental_unit(q));
}
BENCHMARK(BM_FundamentalUnitReal)->Arg(151)->Arg(4999)->Arg(9967);

static void BM_QuarticUnit(benchmark::State& st) {
  const QuarticField F = maximal_order(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(find_fundamental_unit(F));
  st.SetLabel("minima chain");
}
BENCHMARK(BM_QuarticUnit)->Arg(23)->Arg(199)->Arg(1999)->Unit(benchmark::kMillisecond);

static void BM_OrdLogEta(benchmark::State& st) {
  const QuarticField F = maximal_order(st.range(0));
  const UnitCert u = find_fundamental_unit(F);
  for (auto _ : st) benchmark::DoNotOptimize(ord_log_eta(F, u.u));
}
BENCHMARK(BM_OrdLogEta)->Arg(23)->Arg(31)->Arg(1999)->Unit(benchmark::kMillisecond);

static void BM_SimpleZero(benchmark::State& st) {
  const Int q = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(simple_zero_criterion(q));
}
BENCHMARK(BM_SimpleZero)->Arg(7)->Arg(9967)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

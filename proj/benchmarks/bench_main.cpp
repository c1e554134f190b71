#include <benchmark/benchmark.h>

#include <numbers>

#include "umbilic/blowup.hpp"
#include "umbilic/holonomy.hpp"
#include "umbilic/lineode.hpp"
#include "umbilic/portrait.hpp"

using namespace umbilic;

namespace {

UmbilicSurfaceSpec open_spec() {
  SurfaceOptions opt;
  opt.u_begin = -1.0;
  return make_surface(2.0, {ScalarProfile::polynomial({1.0, 0.5, -0.2}), ScalarProfile::constant(0.3),
                            ScalarProfile::polynomial({1.0, 0.2}), ScalarProfile::constant(0.4)},
                      opt);
}

UmbilicSurfaceSpec holonomy_spec() {
  const double l = 2 * std::numbers::pi;
  SurfaceOptions opt;
  opt.closed = true;
  return make_surface(l, {ScalarProfile::constant(0.0), ScalarProfile::fourier(l, {0.0, 1.0}),
                          ScalarProfile::fourier(l, {2.0, 0.0, 1.0}), ScalarProfile::constant(0.0)},
                      opt);
}

void BM_FormsNumeric(benchmark::State& state) {
  const auto s = open_spec();
  FiniteDifferenceOptions fd;
  fd.richardson = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(forms_numeric(s, 0.3, 0.05, fd));
}
BENCHMARK(BM_FormsNumeric)->Arg(0)->Arg(1);

void BM_FrameIntegration(benchmark::State& state) {
  const auto k = ScalarProfile::fourier(6.0, {1.0, 0.3, 0.1});
  const auto kg = ScalarProfile::constant(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_darboux_frame(k, kg, 6.0, 1e-3));
}
BENCHMARK(BM_FrameIntegration)->Unit(benchmark::kMillisecond);

void BM_PrincipalLine(benchmark::State& state) {
  const auto s = open_spec();
  LineOptions opt;
  opt.max_steps = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_principal_line(s, {0.0, 0.1}, 1, opt));
}
BENCHMARK(BM_PrincipalLine)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ClassifyDarboux(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_darboux(3.0, 1.0));
}
BENCHMARK(BM_ClassifyDarboux);

void BM_PortraitOracle(benchmark::State& state) {
  OracleOptions opt;
  opt.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phase_portrait_oracle(LinearJet::darboux(3.0, 1.0), opt));
}
BENCHMARK(BM_PortraitOracle)->Arg(1800)->Arg(7200)->Unit(benchmark::kMillisecond);

void BM_ReturnMap(benchmark::State& state) {
  const auto s = holonomy_spec();
  for (auto _ : state) benchmark::DoNotOptimize(return_map_numeric(s));
}
BENCHMARK(BM_ReturnMap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

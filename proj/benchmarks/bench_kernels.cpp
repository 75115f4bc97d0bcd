#include <benchmark/benchmark.h>

#include <vector>

#include "hfgrad/bath_states.hpp"
#include "hfgrad/closed_forms.hpp"
#include "hfgrad/exact_engine.hpp"
#include "hfgrad/geometry.hpp"
#include "hfgrad/magnus_fields.hpp"
#include "hfgrad/spin_ops.hpp"

using namespace hfgrad;

namespace {

DeviceGeometry donor(double nuclei) {
  DeviceGeometry g;
  g.dim = 3;
  g.q = 1.0;
  g.bohr_radius_nm = 3.0;
  g.nuclei = nuclei;
  return g;
}

std::vector<double> grid(int n, double t_max) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  return t;
}

constexpr double kA = 3.19e8;
constexpr double kDeltaBx = 5.28e7;
constexpr double kGyro = 4.55e-4;
constexpr double kZeeman = 3.52e10;

void BM_WignerSmallD(benchmark::State& st) {
  double I = st.range(0) / 2.0;
  std::vector<double> out(100);
  double beta = 0.3;
  for (auto _ : st) {
    wigner_small_d(I, beta, out.data());
    benchmark::DoNotOptimize(out.data());
    beta += 1e-9;
  }
}
BENCHMARK(BM_WignerSmallD)->Arg(1)->Arg(3)->Arg(9);

void BM_SiteGeneration(benchmark::State& st) {
  DeviceGeometry g = donor(static_cast<double>(st.range(0)));
  for (auto _ : st) {
    SiteTable t = generate_sites(g, kA, kDeltaBx, 0.5, kGyro, 1);
    benchmark::DoNotOptimize(t.coupling.data());
    st.counters["sites"] = static_cast<double>(t.size());
  }
}
BENCHMARK(BM_SiteGeneration)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_ExactNarrowedFid(benchmark::State& st) {
  SiteTable t = generate_sites(donor(250), kA, kDeltaBx, 0.5, kGyro, 1);
  BathState s = sample_narrowed(t, 1);
  auto times = grid(static_cast<int>(st.range(0)), 2.6e-4);
  EngineOptions o;
  o.workers = 1;
  for (auto _ : st) {
    auto c = fid_exact(t, s, kZeeman, times, o);
    benchmark::DoNotOptimize(c.value.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(t.size() * times.size()));
}
BENCHMARK(BM_ExactNarrowedFid)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ExactThermalEchoRealization(benchmark::State& st) {
  SiteTable t = generate_sites(donor(250), kA, kDeltaBx, 0.5, kGyro, 1);
  BathState s = sample_thermal(t, 1, 1);
  auto times = grid(60, 5e-6);
  EngineOptions o;
  o.workers = 1;
  for (auto _ : st) {
    auto c = exact_realization_sum(t, s, 0.0, Protocol::HahnEcho, times, 0, 1, o);
    benchmark::DoNotOptimize(c.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(t.size() * times.size()));
}
BENCHMARK(BM_ExactThermalEchoRealization)->Unit(benchmark::kMillisecond);

void BM_MagnusField(benchmark::State& st) {
  double t = 1e-6;
  for (auto _ : st) {
    Vec3 h = st.range(0) ? hahn_field(kA * 1e-3, kDeltaBx, kGyro, kZeeman, t)
                         : fid_field(kA * 1e-3, kDeltaBx, kGyro, kZeeman, t);
    benchmark::DoNotOptimize(h);
    t += 1e-12;
  }
}
BENCHMARK(BM_MagnusField)->Arg(0)->Arg(1);

void BM_ThermalGaussian(benchmark::State& st) {
  SiteTable t = generate_sites(donor(250), kA, kDeltaBx, 0.5, kGyro, 1);
  EffectiveField f(Protocol::HahnEcho, kZeeman);
  auto times = grid(200, 5e-6);
  for (auto _ : st) {
    auto c = thermal_gaussian(t, f, times, Frame::Rotating, 1);
    benchmark::DoNotOptimize(c.value.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(t.size() * times.size()));
}
BENCHMARK(BM_ThermalGaussian)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

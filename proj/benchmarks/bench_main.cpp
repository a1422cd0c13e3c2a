#include <benchmark/benchmark.h>

#include "cityres/bie.hpp"
#include "cityres/greens.hpp"
#include "cityres/linalg.hpp"
#include "cityres/resonance.hpp"
#include "cityres/specfun.hpp"

namespace {

using namespace cityres;

std::vector<bie::Foundation> row(std::size_t n) {
  std::vector<bie::Foundation> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back({5.0 * j, 5.0 * j + 2.0});
  return out;
}

city::CityConfig city_row(std::size_t n) {
  std::vector<city::BuildingSpec> b;
  for (const auto& f : row(n)) {
    city::BuildingSpec s;
    s.a = f.a;
    s.b = f.b;
    b.push_back(s);
  }
  return city::CityConfig::finite(b);
}

void BM_BesselJ0Y0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x = x > 40.0 ? 0.01 : x + 0.37;
    benchmark::DoNotOptimize(specfun::bessel_j0(x) + specfun::bessel_y0(x));
  }
}
BENCHMARK(BM_BesselJ0Y0);

void BM_ErfcComplex(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t = t > 6.0 ? -6.0 : t + 0.11;
    benchmark::DoNotOptimize(specfun::erfc_complex({t, 0.7 * t + 0.3}));
  }
}
BENCHMARK(BM_ErfcComplex);

void BM_GperEwald(benchmark::State& state) {
  const greens::PeriodicCell cell(3.75, 1.16);
  const auto cfg = greens::ewald_for(cell);
  double dx = 0.0;
  for (auto _ : state) {
    dx = dx > 3.0 ? 0.05 : dx + 0.13;
    benchmark::DoNotOptimize(greens::gper_ewald(cell, dx, 0.0, cfg));
  }
}
BENCHMARK(BM_GperEwald);

void BM_AssembleFree(benchmark::State& state) {
  const bie::FoundationGrid grid(row(static_cast<std::size_t>(state.range(0))), 5);
  for (auto _ : state) benchmark::DoNotOptimize(bie::assemble(grid, 1.0, bie::KernelMode::free()));
}
BENCHMARK(BM_AssembleFree)->Arg(6)->Arg(12)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_AssemblePeriodic(benchmark::State& state) {
  const bie::FoundationGrid grid({{0.0, 1.2}, {2.0, 3.0}, {5.0, 6.7}}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bie::assemble(grid, 1.0, bie::KernelMode::periodic(3.5)));
}
BENCHMARK(BM_AssemblePeriodic)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_LuFactor(benchmark::State& state) {
  const bie::FoundationGrid grid(row(static_cast<std::size_t>(state.range(0))), 5);
  const auto k = bie::assemble(grid, 1.0, bie::KernelMode::free());
  for (auto _ : state) benchmark::DoNotOptimize(LuFactorization(k));
}
BENCHMARK(BM_LuFactor)->Arg(6)->Arg(12)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_TMatrix(benchmark::State& state) {
  const auto city = city_row(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resonance::t_matrix(city, 1.0, 5));
}
BENCHMARK(BM_TMatrix)->Arg(6)->Arg(12)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_JacobiEigen(benchmark::State& state) {
  const auto t = resonance::t_matrix(city_row(51), 1.0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(resonance::jacobi_eigen(t.entries));
}
BENCHMARK(BM_JacobiEigen)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

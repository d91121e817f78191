#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "anglab/kernels.hpp"
#include "anglab/norms.hpp"
#include "anglab/nse_picard.hpp"
#include "anglab/singular_integrals.hpp"

using namespace anglab;

namespace {

const RadialGrid& bench_radial() {
  static RadialGrid r = build_radial_grid(1e-3, 12.0, 96, Grading::Composite);
  return r;
}

const SphereGrid& bench_sphere() {
  static SphereGrid s = build_sphere_grid(3, 4);
  return s;
}

GridField bench_field() {
  return sample_field(bench_radial(), bench_sphere(), [](double rho, const Vec3& w) {
    return std::exp(-rho * rho) * (1.0 + 0.2 * w.z);
  });
}

void BM_MixedNorm(benchmark::State& state) {
  GridField f = bench_field();
  for (auto _ : state)
    benchmark::DoNotOptimize(mixed_norm(f, -0.25, ExtReal(2), ExtReal(4)));
}
BENCHMARK(BM_MixedNorm);

void BM_EvalI(benchmark::State& state) {
  double r = 1.0 + std::pow(10.0, -state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval_I(2.5, r, 3, 1e-9));
}
BENCHMARK(BM_EvalI)->Arg(1)->Arg(3)->Arg(5);

void BM_RieszRadial(benchmark::State& state) {
  RadialGrid r = build_radial_grid(1e-3, 12.0, static_cast<int>(state.range(0)),
                                   Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 2);
  GridField f = sample_field(r, s, [](double rho, const Vec3&) { return std::exp(-rho * rho); });
  for (auto _ : state) benchmark::DoNotOptimize(riesz_potential(f, 1.0));
}
BENCHMARK(BM_RieszRadial)->Arg(64)->Arg(128);

void BM_HeatEvolve(benchmark::State& state) {
  GridField f = bench_field();
  for (auto _ : state) benchmark::DoNotOptimize(heat_evolve(f, 0.5));
}
BENCHMARK(BM_HeatEvolve);

void BM_LerayProject(benchmark::State& state) {
  SpectralField u = taylor_green(32, 2.0 * std::numbers::pi, 1.0);
  for (auto _ : state) {
    SpectralField v = u;
    v.leray_project();
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_LerayProject);

void BM_NonlinearTerm(benchmark::State& state) {
  SpectralField u = taylor_green(static_cast<int>(state.range(0)), 2.0 * std::numbers::pi, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(outer_product_dealiased(u));
}
BENCHMARK(BM_NonlinearTerm)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();

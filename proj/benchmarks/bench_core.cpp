#include <benchmark/benchmark.h>

#include "catmew/analytic.hpp"
#include "catmew/fock_oracle.hpp"
#include "catmew/tuning.hpp"

#include <numbers>
#include <vector>

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> uniform_grid(double start, double end, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            start + (end - start) * (static_cast<double>(i) / (points - 1));
    }
    return grid;
}

void bm_evaluate_point(benchmark::State& state) {
    double theta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(catmew::evaluate_point(0.5, theta, 0.3));
        theta += 1e-3;
    }
}
BENCHMARK(bm_evaluate_point);

void bm_time_series_1001(benchmark::State& state) {
    const auto grid = uniform_grid(0.0, 2.0 * two_pi, 1001);
    const auto profile = catmew::PhaseProfile::constant(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(catmew::time_series(0.5, grid, profile));
    }
}
BENCHMARK(bm_time_series_1001);

void bm_evolve_eigendecomposition(benchmark::State& state) {
    catmew::OracleConfig cfg;
    cfg.dim = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            catmew::evolve_branches(1.0, two_pi, cfg));
    }
}
BENCHMARK(bm_evolve_eigendecomposition)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void bm_evolve_fixed_step(benchmark::State& state) {
    catmew::OracleConfig cfg;
    cfg.dim = static_cast<int>(state.range(0));
    cfg.propagator = catmew::Propagator::fixed_step_fourth_order;
    cfg.steps_per_period = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            catmew::evolve_branches(1.0, two_pi, cfg));
    }
}
BENCHMARK(bm_evolve_fixed_step)
    ->Args({16, 1000})
    ->Args({32, 1000})
    ->Args({64, 1000})
    ->Args({32, 4000});

void bm_scan_chi(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(catmew::scan_chi(0.3, two_pi, 1e-3));
    }
}
BENCHMARK(bm_scan_chi);

void bm_compare_with_analytic_201(benchmark::State& state) {
    const auto grid = uniform_grid(0.0, 2.0 * two_pi, 201);
    const auto cfg = catmew::OracleConfig::for_kappa(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            catmew::compare_with_analytic(0.5, grid, 0.0, cfg));
    }
}
BENCHMARK(bm_compare_with_analytic_201);

} // namespace

BENCHMARK_MAIN();

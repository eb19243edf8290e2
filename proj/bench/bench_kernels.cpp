#include "slowdet/covering.hpp"

#include <benchmark/benchmark.h>

using namespace slowdet;

namespace {

void det_trials(benchmark::State& state, Parallelism par) {
    CurveSpec c = catalog_curve("spiral_1_1");
    int d = static_cast<int>(state.range(0));
    Real N(100);
    Real L = interval_length(degree_data(d), *c.cert, Real(10), N);
    for (auto _ : state) {
        DetCheckReport r = determinant_bound_check(c, d, N, L, 32, 1, par);
        benchmark::DoNotOptimize(r.violations);
    }
    state.SetItemsProcessed(state.iterations() * 32);
}

void graph_prefilter_scan(benchmark::State& state, Parallelism par) {
    CurveSpec c = catalog_curve("exp2_graph");
    long T = state.range(0);
    DoubleFn fn(display_y(c));
    std::vector<double> xs;
    for (auto [p, q] : enumerate_rationals_small(T)) xs.push_back(double(p) / double(q));
    for (auto _ : state) {
        auto hits = graph_prefilter(fn, xs, T, par);
        benchmark::DoNotOptimize(hits.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

}  // namespace

BENCHMARK_CAPTURE(det_trials, serial, Parallelism::Serial)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(det_trials, openmp, Parallelism::OpenMP)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(graph_prefilter_scan, serial, Parallelism::Serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(graph_prefilter_scan, openmp, Parallelism::OpenMP)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

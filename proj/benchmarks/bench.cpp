#include "thetacycle/cycle.hpp"
#include "thetacycle/serre.hpp"

#include <benchmark/benchmark.h>

using namespace thetacycle;

static void BM_SeriesMul(benchmark::State& state) {
    Modulus mod(13, 2);
    std::size_t n = (std::size_t)state.range(0);
    SeriesToolkit tk(mod, n);
    QSeries a = tk.eisenstein(4, n);
    QSeries b = tk.delta(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(series_mul(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

static void BM_ThetaExpansion(benchmark::State& state) {
    Modulus mod(13, 2);
    std::size_t n = 120;
    QSeries d = generator_qexp(Generator::Delta, mod, n);
    unsigned i = (unsigned)state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(theta_power_expansion(d, i));
}
BENCHMARK(BM_ThetaExpansion)->Arg(2)->Arg(6)->Arg(12);

static void BM_EchelonBasis(benchmark::State& state) {
    Modulus mod(13, 2);
    long w = state.range(0);
    std::size_t n = (std::size_t)dim_modular_forms(w) + 6;
    for (auto _ : state)
        benchmark::DoNotOptimize(echelon_basis(w, mod, n));
}
BENCHMARK(BM_EchelonBasis)->Arg(120)->Arg(360)->Arg(720);

static void BM_WeightFiltration(benchmark::State& state) {
    Modulus mod(17, 2);
    FiltrationContext ctx(mod);
    std::size_t n = ctx.test_precision(558) + 2;
    QSeries s = generator_qexp(Generator::Delta, mod, n)
                * e2_representative_mod_p2(mod, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(ctx.weight_filtration(s));
}
BENCHMARK(BM_WeightFiltration);

static void BM_CycleSteps(benchmark::State& state) {
    CycleOptions opts;
    opts.i_max = state.range(0);
    Modulus mod(13, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_cycle(FormExpr::delta(), mod, opts));
}
BENCHMARK(BM_CycleSteps)->Arg(5)->Arg(20)->Arg(156)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "runprob/runprob.hpp"

namespace {

using runprob::BigRational;
using runprob::RunQuery;

const BigRational kP = BigRational::parse("1/3");

void BM_ClosedForm(benchmark::State& state) {
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::exact::z_closed_form(q));
}
BENCHMARK(BM_ClosedForm)->Arg(50)->Arg(300)->Arg(2000);

void BM_Recurrence(benchmark::State& state) {
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::exact::z_recurrence(q));
}
BENCHMARK(BM_Recurrence)->Arg(50)->Arg(300)->Arg(2000);

void BM_Series(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(runprob::exact::series_coefficients(kP, 4, state.range(0)));
}
BENCHMARK(BM_Series)->Arg(50)->Arg(300)->Arg(2000);

void BM_ClosedFormFloat(benchmark::State& state) {
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::numeric::z_closed_form_float(q));
}
BENCHMARK(BM_ClosedFormFloat)->Arg(50)->Arg(300)->Arg(2000);

void BM_KernelRoots(benchmark::State& state) {
    const auto kernel = runprob::numeric::make_kernel(kP, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(runprob::numeric::solve_kernel_roots(kernel));
}
BENCHMARK(BM_KernelRoots)->Arg(2)->Arg(8)->Arg(32);

void BM_Spectral(benchmark::State& state) {
    const auto s = runprob::numeric::solve_kernel_roots(runprob::numeric::make_kernel(kP, 4));
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::numeric::z_spectral(q, s));
}
BENCHMARK(BM_Spectral)->Arg(50)->Arg(2000)->Arg(1000000);

void BM_MatrixPower(benchmark::State& state) {
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::numeric::z_matrix_power(q));
}
BENCHMARK(BM_MatrixPower)->Arg(50)->Arg(2000)->Arg(1000000);

void BM_BruteForce(benchmark::State& state) {
    const RunQuery q{kP, 4, state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::oracle::z_bruteforce(q));
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(20);

void BM_MonteCarlo(benchmark::State& state) {
    const RunQuery q{kP, 4, 100};
    for (auto _ : state) benchmark::DoNotOptimize(runprob::oracle::mc_estimate(q, static_cast<std::uint64_t>(state.range(0)), 42));
}
BENCHMARK(BM_MonteCarlo)->Arg(65536);

} // namespace
BENCHMARK_MAIN();

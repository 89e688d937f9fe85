#include <benchmark/benchmark.h>

#include "qseries/identities.hpp"
#include "qseries/partitions.hpp"

using namespace qseries;
using namespace qseries::build;

namespace {

Series dense_two_var(int order) {
    VarSpec spec({"q", "a"}, order, order);
    // a dense unit: 1/((q)_inf (a)_inf)
    return invert(poch_q_inf(spec) * pochhammer_inf(spec, Monomial::var(1)));
}

void BM_SeriesMul(benchmark::State& state) {
    Series s = dense_two_var((int)state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(s * s);
}
BENCHMARK(BM_SeriesMul)->Arg(20)->Arg(30);

void BM_Invert(benchmark::State& state) {
    VarSpec spec({"q", "a"}, (int)state.range(0), (int)state.range(0));
    Series s = poch_q_inf(spec) * pochhammer_inf(spec, Monomial::var(1));
    for (auto _ : state) benchmark::DoNotOptimize(invert(s));
}
BENCHMARK(BM_Invert)->Arg(20)->Arg(30);

void BM_PochhammerInf(benchmark::State& state) {
    VarSpec spec = VarSpec::q_only((int)state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pochhammer_inf(spec, Monomial::q_power(1)));
}
BENCHMARK(BM_PochhammerInf)->Arg(30)->Arg(60);

void BM_AlternatingPoleSum(benchmark::State& state) {
    VarSpec spec = VarSpec::q_only(30);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            alternating_pole_sum(spec, Rat(state.range(0)), state.range(0)));
}
BENCHMARK(BM_AlternatingPoleSum)->Arg(1)->Arg(5);

void BM_VerifyKluyver(benchmark::State& state) {
    Binding b;
    b.bounds = Bounds{(int)state.range(0), (int)state.range(0)};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_identity("kluyver", b));
}
BENCHMARK(BM_VerifyKluyver)->Arg(20)->Arg(40);

void BM_VerifyDixitMaji(benchmark::State& state) {
    Binding b;
    b.values["a"] = FormalTag{};
    b.values["b"] = FormalTag{};
    b.values["c"] = Scalar(rat(1, 2));
    b.bounds = Bounds{(int)state.range(0), (int)state.range(0)};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_identity("dixit-maji", b));
}
BENCHMARK(BM_VerifyDixitMaji)->Arg(16)->Arg(24);

void BM_PartitionDivisorSum(benchmark::State& state) {
    Scalar c(rat(1, 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            partition_divisor_sum((int)state.range(0), 2, c));
}
BENCHMARK(BM_PartitionDivisorSum)->Arg(20)->Arg(40);

} // namespace

BENCHMARK_MAIN();

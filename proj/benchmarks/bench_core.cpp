#include <benchmark/benchmark.h>

#include "endoring/radical.hpp"
#include "endoring/tower.hpp"

using namespace endoring;

static void BM_SpanCanonicalization(benchmark::State& state) {
    PGroup A = PGroup::parse("2^1+2^2+2^3");
    Rng rng(1);
    std::vector<GroupElement> gens;
    for (int t = 0; t < 3; ++t) gens.push_back(random_element(A, rng));
    for (auto _ : state) {
        Subgroup S = Subgroup::span(A, gens);
        benchmark::DoNotOptimize(S);
    }
}
BENCHMARK(BM_SpanCanonicalization);

static void BM_Kernel(benchmark::State& state) {
    PGroup A = PGroup::parse("2^1+2^2+2^3+2^4");
    Rng rng(2);
    Endo f = random_endo(A, rng);
    for (auto _ : state) {
        Subgroup k = kernel(f);
        benchmark::DoNotOptimize(k);
    }
}
BENCHMARK(BM_Kernel);

static void BM_Compose(benchmark::State& state) {
    PGroup A = PGroup::parse("2^1+2^2+2^3+2^4");
    Rng rng(3);
    Endo f = random_endo(A, rng), g = random_endo(A, rng);
    for (auto _ : state) {
        Endo h = f * g;
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_Compose);

static void BM_RadicalOracle(benchmark::State& state) {
    PGroup A = PGroup::parse("2^1+2^2");
    for (auto _ : state) {
        auto members = radical_oracle(A);
        benchmark::DoNotOptimize(members);
    }
}
BENCHMARK(BM_RadicalOracle);

static void BM_RadicalMembership(benchmark::State& state) {
    PGroup A = PGroup::parse("2^1+2^2+2^3+2^4");
    Rng rng(4);
    Endo f = random_endo(A, rng);
    for (auto _ : state) benchmark::DoNotOptimize(radical_membership(f));
}
BENCHMARK(BM_RadicalMembership);

static void BM_QuasiInverseTrace(benchmark::State& state) {
    TowerSpec T = make_tower(2, "rule:i+1", static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto report = quasi_inverse_trace(T, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_QuasiInverseTrace)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();

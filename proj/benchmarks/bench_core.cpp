#include <benchmark/benchmark.h>

#include <charsumlab/charsum.hpp>
#include <charsumlab/energy.hpp>
#include <charsumlab/field.hpp>
#include <charsumlab/paley.hpp>
#include <charsumlab/rng.hpp>
#include <charsumlab/sets.hpp>

namespace {

using csl::Character;
using csl::FpSet;
using csl::PrimeField;

void BM_FieldTableBuild(benchmark::State& state) {
    const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto f = PrimeField::make(p);
        benchmark::DoNotOptimize(f->generator());
    }
}
BENCHMARK(BM_FieldTableBuild)->Arg(10007)->Arg(1000003);

void BM_BilinearCharSum(benchmark::State& state) {
    auto f = PrimeField::make(10007);
    Character chi(f, 2);
    const auto n = state.range(0);
    FpSet a = FpSet::interval(f, 1, n);
    FpSet b = FpSet::interval(f, 1, n);
    for (auto _ : state) {
        auto s = char_sum(chi, a, b);
        benchmark::DoNotOptimize(s.abs());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_BilinearCharSum)->Arg(100)->Arg(400);

void BM_SumsetPairwise(benchmark::State& state) {
    auto f = PrimeField::make(1000003);  // large modulus forces the pairwise path
    csl::Rng rng(1);
    std::vector<std::uint64_t> v;
    for (int i = 0; i < state.range(0); ++i) v.push_back(1 + rng.below(1000002));
    FpSet a(f, v);
    for (auto _ : state) {
        FpSet s = sumset(a, a);
        benchmark::DoNotOptimize(s.size());
    }
}
BENCHMARK(BM_SumsetPairwise)->Arg(256)->Arg(512);

void BM_SumsetDense(benchmark::State& state) {
    auto f = PrimeField::make(10007);  // small modulus and big sets: bitset path
    csl::Rng rng(2);
    std::vector<std::uint64_t> v;
    for (int i = 0; i < 2048; ++i) v.push_back(rng.below(10007));
    FpSet a(f, v);
    for (auto _ : state) {
        FpSet s = sumset(a, a);
        benchmark::DoNotOptimize(s.size());
    }
}
BENCHMARK(BM_SumsetDense);

void BM_RatioProfile(benchmark::State& state) {
    auto f = PrimeField::make(10007);
    csl::Rng rng(3);
    std::vector<std::uint64_t> v;
    while (v.size() < static_cast<std::size_t>(state.range(0))) {
        std::uint64_t x = rng.below(10007);
        if (x) v.push_back(x);
    }
    FpSet a(f, v);
    for (auto _ : state) {
        auto prof = csl::RatioProfile::of(a);
        benchmark::DoNotOptimize(prof.pair_total());
    }
}
BENCHMARK(BM_RatioProfile)->Arg(64)->Arg(512);

void BM_WeilSum(benchmark::State& state) {
    auto f = PrimeField::make(1000003);
    Character chi(f, 2);
    csl::SplitPoly poly{{1, 7, 19, 902}, {1, 2, 1, 3}};
    for (auto _ : state) {
        auto ws = weil_sum(chi, poly);
        benchmark::DoNotOptimize(ws.within_bound);
    }
}
BENCHMARK(BM_WeilSum);

void BM_MomentCheck(benchmark::State& state) {
    auto f = PrimeField::make(199);
    Character chi(f, 2);
    FpSet interval = FpSet::interval(f, 1, state.range(0));
    for (auto _ : state) {
        auto mc = davenport_check(chi, interval, 2);
        benchmark::DoNotOptimize(mc.ok);
    }
}
BENCHMARK(BM_MomentCheck)->Arg(4)->Arg(8);

void BM_PaleyClique(benchmark::State& state) {
    auto g = csl::PaleyGraph::build(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto res = clique_number(g);
        benchmark::DoNotOptimize(res.size);
    }
}
BENCHMARK(BM_PaleyClique)->Arg(101)->Arg(401);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "pavlab/approx.hpp"
#include "pavlab/arith.hpp"
#include "pavlab/criteria.hpp"
#include "pavlab/measure.hpp"
#include "pavlab/pseudo_norm.hpp"

namespace {

using namespace pavlab;

void bm_phi_sieve(benchmark::State& state) {
    uint64_t limit = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        auto sieve = phi_sieve(limit);
        benchmark::DoNotOptimize(sieve.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(limit));
}
BENCHMARK(bm_phi_sieve)->Arg(100000)->Arg(1000000);

void bm_phi_ratio_sum_restricted(benchmark::State& state) {
    uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        Rat s = phi_ratio_sum_restricted(RestrictedRange(1, n, {2}));
        benchmark::DoNotOptimize(s.get_num().get_mpz_t());
    }
}
BENCHMARK(bm_phi_ratio_sum_restricted)->Arg(10000)->Arg(100000);

void bm_norm_scan(benchmark::State& state) {
    PseudoValueSequence d = PseudoValueSequence::prime_power(2);
    uint64_t n_max = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        uint64_t acc = 0;
        for (uint64_t n = 1; n <= n_max; ++n) acc += d.norm(n).index;
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(n_max));
}
BENCHMARK(bm_norm_scan)->Arg(100000);

void bm_totient_ratio_sum(benchmark::State& state) {
    PseudoValueSequence d = PseudoValueSequence::prime_power(2);
    uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        Rat s = d.totient_ratio_sum(n);
        benchmark::DoNotOptimize(s.get_num().get_mpz_t());
    }
}
BENCHMARK(bm_totient_ratio_sum)->Arg(1000000);

void bm_weighted_partial_sum(benchmark::State& state) {
    PsiSpec psi = PsiSpec::power_log(Rat(1), Rat(2), Rat(0));
    SequenceFamily F({PseudoValueSequence::prime_power(2)});
    WeightKind w = WeightKind::inverse_norm_product(F);
    uint64_t n_max = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        SeriesReport rep = weighted_partial_sum(psi, w, n_max);
        benchmark::DoNotOptimize(rep.sum_float);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(n_max));
}
BENCHMARK(bm_weighted_partial_sum)->Arg(10000)->Arg(100000);

void bm_build_E_n(benchmark::State& state) {
    uint64_t n = static_cast<uint64_t>(state.range(0));
    Rat psi0(1, 8);
    for (auto _ : state) {
        IntervalSet e = build_E_n(n, psi0);
        benchmark::DoNotOptimize(e.size());
    }
}
BENCHMARK(bm_build_E_n)->Arg(97)->Arg(997)->Arg(9973);

void bm_union_range(benchmark::State& state) {
    PsiSpec psi = PsiSpec::constant(Rat(1, 8));
    SequenceFamily none;
    uint64_t n1 = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        UnionReport rep = union_range(psi, none, 3, n1);
        benchmark::DoNotOptimize(rep.set.size());
    }
}
BENCHMARK(bm_union_range)->Arg(60)->Arg(200);

void bm_monte_carlo(benchmark::State& state) {
    IntervalSet set = union_range(PsiSpec::constant(Rat(1, 8)),
                                  SequenceFamily(), 3, 60)
                          .set;
    uint64_t samples = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        McReport rep = monte_carlo_hits(set, samples, 42);
        benchmark::DoNotOptimize(rep.hits);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(samples));
}
BENCHMARK(bm_monte_carlo)->Arg(1000)->Arg(10000);

void bm_coprime_dist(benchmark::State& state) {
    RealTarget golden = RealTarget::quadratic(Int(1), Int(1), 5, Int(2));
    uint64_t n_max = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        double acc = 0.0;
        for (uint64_t n = 3; n <= n_max; ++n) {
            acc += coprime_dist(golden, n).dist.value();
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(n_max));
}
BENCHMARK(bm_coprime_dist)->Arg(300)->Arg(3000);

}  // namespace

BENCHMARK_MAIN();

#include "engel/construction.hpp"
#include "engel/detectors.hpp"
#include "engel/dimension.hpp"
#include "engel/engel.hpp"
#include "engel/family.hpp"
#include "engel/rational.hpp"

#include <benchmark/benchmark.h>

using namespace engel;

namespace {

void BM_digits(benchmark::State& state) {
    const Rational x = parse_rational("355/1130");
    const auto depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(digits(x, depth));
    }
}
BENCHMARK(BM_digits)->Arg(8)->Arg(16)->Arg(32);

void BM_partial_sum(benchmark::State& state) {
    const DigitSeq s = digits(parse_rational("355/1130"),
                              static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_sum(s));
    }
}
BENCHMARK(BM_partial_sum)->Arg(8)->Arg(16)->Arg(32);

void BM_count_Dn(benchmark::State& state) {
    const E0Config cfg =
        E0Config::from_pattern(build_b(FamilySpec::affine_family(), 5, 3),
                               static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_Dn(cfg, cfg.depth));
    }
}
BENCHMARK(BM_count_Dn)->Arg(12)->Arg(24)->Arg(48);

void BM_select_thresholds(benchmark::State& state) {
    const FamilySpec fam = FamilySpec::affine_family();
    const auto K = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_thresholds(fam, 5, K));
    }
}
BENCHMARK(BM_select_thresholds)->Arg(3)->Arg(5);

void BM_sample_E0(benchmark::State& state) {
    const E0Config cfg = E0Config::make(5, {7, 30, 130},
                                        static_cast<std::uint64_t>(state.range(0)));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_E0(cfg, cfg.depth, seed++));
    }
}
BENCHMARK(BM_sample_E0)->Arg(20)->Arg(40);

void BM_mu_cylinder(benchmark::State& state) {
    const E0Config cfg = E0Config::make(5, {}, 20);
    const MeasureContext ctx = MeasureContext::make(cfg);
    const DigitSeq s = sample_E0(cfg, 20, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mu_cylinder(ctx, s));
    }
}
BENCHMARK(BM_mu_cylinder);

void BM_density_profile(benchmark::State& state) {
    std::vector<BigInt> v;
    std::uint64_t x = 88172645463325252ull;
    for (int i = 0; i < state.range(0); ++i) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        v.push_back(1 + BigInt(static_cast<unsigned long>(x % 100000)));
    }
    const DigitSet A(v);
    for (auto _ : state) {
        benchmark::DoNotOptimize(banach_density_profile(A, {3, 5, 8}));
    }
}
BENCHMARK(BM_density_profile)->Arg(1000)->Arg(10000);

void BM_quasi_lipschitz(benchmark::State& state) {
    const PatternSeq p = build_b(FamilySpec::parse("list: n"), 5, 1);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const E0Config cfg = E0Config::from_pattern(p, n + 12);
    DigitSeq x, y;
    for (std::uint64_t lev = 1; lev <= n + 12; ++lev) {
        AllowedDigits w(cfg, lev);
        x = x.extended(lev == n + 1 ? w.nth(1) : w.nth(0));
        y = y.extended(w.nth(0));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(quasi_lipschitz_ratio(x, y, p));
    }
}
BENCHMARK(BM_quasi_lipschitz)->Arg(10)->Arg(30);

} // namespace

BENCHMARK_MAIN();

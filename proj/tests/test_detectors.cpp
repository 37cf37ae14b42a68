#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "engel/construction.hpp"
#include "engel/detectors.hpp"
#include "engel/errors.hpp"
#include "oracles.hpp"

#include <random>

using namespace engel;

namespace {

DigitSet set_of(std::vector<long> v) {
    std::vector<BigInt> b(v.begin(), v.end());
    return DigitSet(std::move(b));
}

std::vector<BigInt> random_subset(std::mt19937_64& g, long lo, long hi,
                                  double keep) {
    std::vector<BigInt> v;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (long x = lo; x <= hi; ++x) {
        if (u(g) < keep) v.push_back(x);
    }
    if (v.empty()) v.push_back(lo);
    return v;
}

} // namespace

TEST_CASE("digit set basics") {
    DigitSet s(std::vector<BigInt>{9, 3, 3, 7});
    CHECK(s.values() == std::vector<BigInt>{3, 7, 9});
    CHECK(s.size() == 3);
    CHECK(s.contains(7));
    CHECK_FALSE(s.contains(4));
    CHECK(s.min() == 3);
    CHECK(s.max() == 9);
    CHECK_THROWS_AS(DigitSet(std::vector<BigInt>{0, 2}), range_error);
    DigitSet empty;
    CHECK(empty.empty());
    CHECK_THROWS_AS(empty.min(), range_error);

    DigitSeq seq(std::vector<BigInt>{2, 5, 9}, true);
    CHECK(DigitSet::from_seq(seq).values() == std::vector<BigInt>{2, 5, 9});
}

TEST_CASE("density profile examples") {
    DigitSet full = set_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    DensityProfile p = banach_density_profile(full, {5});
    REQUIRE(p.entries.size() == 1);
    CHECK(p.entries[0].density == 1.0);
    CHECK(p.entries[0].count == 5);

    std::vector<BigInt> evens;
    for (long x = 2; x <= 100; x += 2) evens.push_back(x);
    DensityProfile pe = banach_density_profile(DigitSet(evens), {4});
    CHECK(pe.entries[0].density == 0.5);

    DigitSet spread = set_of({3, 4, 5, 100});
    DensityProfile ps = banach_density_profile(spread, {3});
    CHECK(ps.entries[0].density == 1.0);
    CHECK(ps.entries[0].start == 3);

    CHECK_THROWS_AS(banach_density_profile(DigitSet(), {3}), range_error);
    CHECK_THROWS_AS(banach_density_profile(full, {0}), range_error);
}

TEST_CASE("density ties go to the smallest start") {
    DigitSet s = set_of({10, 11, 20, 21, 30, 31});
    DensityProfile p = banach_density_profile(s, {2, 3});
    CHECK(p.entries[0].window == 2);
    CHECK(p.entries[0].count == 2);
    CHECK(p.entries[0].start == 10);
    CHECK(p.entries[1].window == 3);
    CHECK(p.entries[1].count == 2);
    CHECK(p.entries[1].start == 10); // anchored at the first element of a best window
}

TEST_CASE("density equals the exhaustive scan") {
    std::mt19937_64 g(31);
    auto recount = [](const DigitSet& A, const BigInt& m, std::uint64_t w) {
        std::uint64_t c = 0;
        for (BigInt v = m; v < m + BigInt(static_cast<unsigned long>(w)); ++v) {
            if (A.contains(v)) ++c;
        }
        return c;
    };
    for (int i = 0; i < 60; ++i) {
        auto v = random_subset(g, 1, 60, 0.3);
        DigitSet A(v);
        for (std::uint64_t w : {1, 2, 3, 5, 8, 13}) {
            DensityProfile p = banach_density_profile(A, {w});
            auto [start, count] = oracle::density_best(v, w);
            const DensityEntry& e = p.entries[0];
            CHECK(e.count == count);
            CHECK(e.density == double(count) / double(w));
            // The reported start is the smallest element anchoring a best window.
            CHECK(A.contains(e.start));
            CHECK(recount(A, e.start, w) == count);
            for (const BigInt& m : A.values()) {
                if (m >= e.start) break;
                CHECK(recount(A, m, w) < count);
            }
        }
    }
}

TEST_CASE("progression examples") {
    DigitSet a = set_of({2, 5, 8, 11});
    ProgressionResult r = longest_ap(a, 3);
    CHECK(r.length == 4);
    CHECK(r.start == 2);
    CHECK(r.step == 3);
    CHECK(longest_ap(a, 2).length == 1);

    DigitSet gset = set_of({3, 6, 12, 24});
    ProgressionResult gq = longest_gp(gset, 2);
    CHECK(gq.length == 4);
    CHECK(gq.start == 3);
    CHECK(longest_gp(gset, 3).length == 1);

    CHECK_THROWS_AS(longest_ap(a, 0), range_error);
    CHECK_THROWS_AS(longest_gp(a, 1), range_error);

    CHECK(longest_ap(DigitSet(), 1).length == 0);
    CHECK(longest_gp(DigitSet(), 2).length == 0);
}

TEST_CASE("progression ties pick the smallest start") {
    DigitSet s = set_of({1, 2, 10, 11, 40});
    ProgressionResult r = longest_ap(s, 1);
    CHECK(r.length == 2);
    CHECK(r.start == 1);

    DigitSet t = set_of({5, 10, 3, 6, 40, 80});
    ProgressionResult q = longest_gp(t, 2);
    CHECK(q.length == 2);
    CHECK(q.start == 3);
}

TEST_CASE("progressions match the oracle exhaustively for small sets") {
    std::mt19937_64 g(32);
    for (int i = 0; i < 150; ++i) {
        auto v = random_subset(g, 1, 60, 0.35);
        DigitSet A(v);
        for (long d = 1; d <= 60; ++d) {
            CHECK(longest_ap(A, d).length == oracle::ap_length(v, d));
        }
        for (long q = 2; q <= 8; ++q) {
            CHECK(longest_gp(A, q).length == oracle::gp_length(v, q));
        }
    }
}

TEST_CASE("progressions match the oracle on larger random instances") {
    std::mt19937_64 g(33);
    for (int i = 0; i < 40; ++i) {
        std::vector<BigInt> v;
        for (int j = 0; j < 200; ++j) {
            v.push_back(1 + BigInt(static_cast<unsigned long>(g() % 5000)));
        }
        DigitSet A(v);
        std::vector<BigInt> vals = A.values();
        for (long d = 1; d <= 5; ++d) {
            CHECK(longest_ap(A, d).length == oracle::ap_length(vals, d));
        }
        for (long q = 2; q <= 4; ++q) {
            CHECK(longest_gp(A, q).length == oracle::gp_length(vals, q));
        }
    }
}

TEST_CASE("translation examples") {
    DetectResult r = find_translation(set_of({4, 6, 9}), set_of({1, 3, 6}));
    CHECK(r.found);
    CHECK(r.witness == 3);

    DigitSet a = set_of({2, 4, 7, 9});
    DetectResult sub = find_translation(a, set_of({2, 7}));
    CHECK(sub.found);
    CHECK(sub.witness == 0); // A contains B already

    DetectResult none = find_translation(set_of({2, 4}), set_of({1, 2, 3}));
    CHECK_FALSE(none.found);
    CHECK(none.bound_searched == 4); // anchor sweep is complete through max(A)
}

TEST_CASE("translation shifts may be negative") {
    // {5, 10} sits inside {3, 8} only after shifting down by 2.
    DetectResult down = find_translation(set_of({3, 8}), set_of({5, 10}));
    CHECK(down.found);
    CHECK(down.witness == -2);

    // Both -2 and +3 embed {5}; the smaller magnitude wins.
    DetectResult close = find_translation(set_of({3, 8}), set_of({5}));
    CHECK(close.found);
    CHECK(close.witness == -2);

    // Magnitude tie between -1 and +1 resolves to the nonnegative shift.
    DetectResult tie = find_translation(set_of({4, 6}), set_of({5}));
    CHECK(tie.found);
    CHECK(tie.witness == 1);
}

TEST_CASE("scalar examples") {
    DetectResult r = find_scalar(set_of({3, 6, 9}), set_of({1, 2, 3}));
    CHECK(r.found);
    CHECK(r.witness == 3);
    DetectResult one = find_scalar(set_of({5, 11, 30}), set_of({5}));
    CHECK(one.found);
    CHECK(one.witness == 1);
    CHECK_FALSE(find_scalar(set_of({4, 9}), set_of({2, 3})).found);
}

TEST_CASE("scalar witness on geometric query sets yields progressions") {
    // B = {q, q^2, ..., q^k}: a scalar witness n places the k-term
    // geometric progression n q, ..., n q^k inside A.
    std::mt19937_64 g(34);
    for (int i = 0; i < 50; ++i) {
        long q = 2 + long(g() % 3);
        std::size_t k = 2 + g() % 3;
        std::vector<BigInt> b;
        BigInt p = 1;
        for (std::size_t j = 0; j < k; ++j) {
            p *= q;
            b.push_back(p);
        }
        auto v = random_subset(g, 1, 400, 0.2);
        long n0 = 1 + long(g() % 5);
        for (const auto& x : b) v.push_back(x * n0); // plant a witness
        DigitSet A(v);
        DetectResult r = find_scalar(A, DigitSet(b));
        REQUIRE(r.found);
        CHECK(r.witness <= n0);
        CHECK(longest_gp(A, q).length >= k);
        DigitSet bs(b);
        for (const auto& x : bs.values()) {
            CHECK(A.contains(x * r.witness));
        }
    }
}

TEST_CASE("power examples") {
    DetectResult r = find_power(set_of({4, 9, 25}), set_of({2, 3, 5}));
    CHECK(r.found);
    CHECK(r.witness == 2);
    DetectResult one = find_power(set_of({2, 3, 5, 7}), set_of({2, 3}));
    CHECK(one.found);
    CHECK(one.witness == 1);
    DetectResult none = find_power(set_of({8, 27}), set_of({2, 3, 5}));
    CHECK_FALSE(none.found);
    CHECK_THROWS_AS(find_power(set_of({4}), set_of({1, 2})), range_error);
}

TEST_CASE("searches match oracles on random small instances") {
    std::mt19937_64 g(35);
    for (int i = 0; i < 120; ++i) {
        auto va = random_subset(g, 1, 60, 0.3);
        DigitSet A(va);
        auto vb = random_subset(g, 1, 12, 0.3);
        DigitSet B(vb);

        DetectResult tr = find_translation(A, B);
        auto otr = oracle::translation(va, vb);
        CHECK(tr.found == otr.has_value());
        if (tr.found) CHECK(tr.witness == *otr);

        DetectResult sc = find_scalar(A, B);
        BigInt osc = oracle::scalar(va, vb);
        CHECK(sc.found == (osc >= 0));
        if (sc.found) CHECK(sc.witness == osc);

        std::vector<BigInt> vp;
        for (const auto& x : vb) {
            if (x >= 2) vp.push_back(x);
        }
        if (!vp.empty()) {
            DigitSet BP(vp);
            DetectResult pw = find_power(A, BP);
            BigInt opw = oracle::power(va, vp);
            CHECK(pw.found == (opw >= 0));
            if (pw.found) CHECK(pw.witness == opw);
        }
    }
}

TEST_CASE("translation and progression agree") {
    // find_translation(A, {d, 2d, ..., kd}) succeeds exactly when A holds
    // a k-term progression at difference d.
    std::mt19937_64 g(36);
    for (int i = 0; i < 500; ++i) {
        auto v = random_subset(g, 1, 80, 0.35);
        DigitSet A(v);
        long d = 1 + long(g() % 6);
        std::size_t k = 1 + g() % 8;
        std::vector<BigInt> b;
        for (std::size_t j = 1; j <= k; ++j) b.push_back(long(j) * d);
        bool translated = find_translation(A, DigitSet(b)).found;
        bool progression = longest_ap(A, d).length >= k;
        CHECK(translated == progression);
    }
}

TEST_CASE("consecutive pattern blocks fill a density window") {
    for (std::uint64_t m : {3, 5}) {
        std::string dsl = "list: ";
        for (std::uint64_t l = 1; l <= m; ++l) {
            dsl += "n+" + std::to_string(l);
            if (l < m) dsl += "; ";
        }
        FamilySpec fam = FamilySpec::parse(dsl);
        std::uint64_t K = (std::uint64_t(1) << m) - 1;
        PatternSeq p = build_b(fam, 5, K);
        E0Config cfg = E0Config::from_pattern(p, 5);
        MergedPoint mp = merge_pi(sample_E0(cfg, 5, 2), p);
        DensityProfile prof =
            banach_density_profile(DigitSet::from_seq(mp.merged), {m});
        CHECK(prof.entries[0].density == 1.0);
        CHECK(prof.entries[0].start == p.thresholds.back() + 1);
    }
}

TEST_CASE("search bounds are reported") {
    DigitSet a = set_of({4, 6, 9});
    CHECK(find_translation(a, set_of({1, 3, 6})).bound_searched == 9); // max(A)
    CHECK(find_scalar(a, set_of({2})).bound_searched == 4); // max(A)/min(B)
    DetectResult pw = find_power(set_of({8, 27}), set_of({2, 3, 5}));
    CHECK_FALSE(pw.found);
    CHECK(pw.bound_searched == 4); // min-base power passes max(A) at n=5
}

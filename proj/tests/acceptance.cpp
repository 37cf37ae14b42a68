// Acceptance gate: every numbered criterion prints one [PASS]/[FAIL]
// line with its runtime; the exit status is the number of failures.
#include "engel/construction.hpp"
#include "engel/cylinder.hpp"
#include "engel/detectors.hpp"
#include "engel/dimension.hpp"
#include "engel/engel.hpp"
#include "engel/json_io.hpp"
#include "engel/rational.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace engel;

namespace {

struct Failure {
    std::string reason;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure{what};
}

Rational random_rational(std::mt19937_64& g) {
    BigInt den = 2 + BigInt(static_cast<unsigned long>(g() % 999999));
    BigInt num = 1 + BigInt(static_cast<unsigned long>(g() % den.get_ui()));
    Rational x(num, den);
    x.canonicalize();
    return x;
}

DigitSeq random_admissible(std::mt19937_64& g, std::size_t len) {
    std::vector<BigInt> d;
    BigInt cur = 2 + BigInt(static_cast<unsigned long>(g() % 49));
    for (std::size_t i = 0; i < len; ++i) {
        d.push_back(cur);
        cur += BigInt(static_cast<unsigned long>(g() % 9));
    }
    return DigitSeq(std::move(d));
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

// Prefixes agreeing on n minimal digits and splitting at position n+1.
std::pair<DigitSeq, DigitSeq> split_pair(const E0Config& cfg, std::uint64_t n,
                                         std::uint64_t depth) {
    DigitSeq x, y;
    for (std::uint64_t lev = 1; lev <= depth; ++lev) {
        AllowedDigits w(cfg, lev);
        if (lev == n + 1) {
            x = x.extended(w.nth(1));
            y = y.extended(w.nth(0));
        } else {
            const BigInt d = w.nth(0);
            x = x.extended(d);
            y = y.extended(d);
        }
    }
    return {x, y};
}

// --------------------------------------------------------------------------

void criterion_1() {
    DigitSeq one = digits(Rational(1), 8);
    for (std::size_t i = 0; i < 8; ++i) require(one[i] == 2, "digits(1) != 2...");
    DigitSeq half = digits(parse_rational("1/2"), 8);
    for (std::size_t i = 0; i < 8; ++i) require(half[i] == 3, "digits(1/2) != 3...");
    DigitSeq te = digits(parse_rational("3/8"), 4);
    require(te.digits() == std::vector<BigInt>{3, 9, 9, 9}, "digits(3/8) wrong");

    std::mt19937_64 g(101);
    for (int i = 0; i < 1000; ++i) {
        Rational x = random_rational(g);
        std::size_t n = 1 + g() % 12;
        DigitSeq s = digits(x, n);
        Rational resid = x - partial_sum(s);
        require(resid >= 0, "negative residual");
        require(resid <= oracle::cyl_length(s.digits()), "residual exceeds |I_n|");
    }
}

void criterion_2() {
    std::mt19937_64 g(202);
    for (int i = 0; i < 1000; ++i) {
        DigitSeq s = random_admissible(g, 1 + g() % 12);
        Cylinder c = cylinder(s);
        require(c.exact(), "cylinder lost exactness below the depth cap");
        require(*c.right - *c.left == *c.length, "right - left != length");
        require(*c.length == oracle::cyl_length(s.digits()),
                "length formula mismatch");
        require(*c.left == oracle::cyl_left(s.digits()), "left endpoint mismatch");
        require(*c.right == oracle::cyl_right(s.digits()),
                "right endpoint mismatch");
    }
}

void criterion_3() {
    FamilySpec fam = FamilySpec::affine_family();
    for (std::uint64_t K = 1; K <= 5; ++K) {
        PatternSeq p = build_b(fam, 5, K, 10'000'000);
        const std::uint64_t nK = subset_size_cumsum(fam, K);
        require(p.values.size() == nK, "pattern size != n_K");
        BCountReport rep = verify_b_count(p, 2 * nK * nK);
        require(rep.ok, "b-count inequality failed for K=" + std::to_string(K));

        BigInt prev_max = 0;
        for (std::uint64_t k = 1; k <= K; ++k) {
            auto fns = finite_subset(fam, k);
            const std::uint64_t nk = subset_size_cumsum(fam, k);
            BigInt growth;
            mpz_ui_pow_ui(growth.get_mpz_t(), 5, nk * nk);
            growth *= 2;
            const BigInt bound = std::max(growth, prev_max);
            auto block_ok = [&](const BigInt& t) {
                std::vector<BigInt> vals;
                for (const auto& f : fns) vals.push_back(f.eval(t));
                std::sort(vals.begin(), vals.end());
                if (vals.front() <= bound) return false;
                for (std::size_t i = 1; i < vals.size(); ++i) {
                    if (vals[i] == vals[i - 1]) return false;
                }
                return true;
            };
            const BigInt t = p.thresholds[k - 1];
            require(block_ok(t), "selected threshold violates its own bound");
            if (t > 1) {
                require(!block_ok(t - 1), "threshold not minimal (t-1 passes)");
            }
            for (const auto& f : fns) prev_max = std::max(prev_max, f.eval(t));
        }
    }
}

void criterion_4() {
    const E0Config empty = E0Config::make(5, {}, 12);
    const E0Config withp =
        E0Config::from_pattern(build_b(FamilySpec::affine_family(), 5, 3), 12);
    for (const E0Config& cfg : {empty, withp}) {
        require(check_Dn_bound(cfg, 12).ok, "#D_n bound failed");
        DnTable dn = count_Dn(cfg, 12);
        for (std::uint64_t n = 1; n <= 6; ++n) {
            require(dn.product(n) == oracle::count_Dn_enum(5, cfg.forbidden, n),
                    "#D_n != enumeration oracle at n=" + std::to_string(n));
        }
        BigInt prod = 1;
        BigInt lo = 1, hi = 2;
        for (std::uint64_t k = 1; k <= 12; ++k) {
            lo *= 5;
            hi *= 5;
            BigInt c = 0;
            for (const auto& f : cfg.forbidden) {
                if (f >= lo && f < hi) ++c;
            }
            prod *= lo - c;
        }
        require(dn.product(12) == prod, "#D_12 != independent product");
    }
}

void criterion_5() {
    // Exhaustive tree at depth <= 3, with exclusions in every window.
    E0Config cfg3 = E0Config::make(5, {7, 30, 130}, 3);
    MeasureContext ctx3 = MeasureContext::make(cfg3);
    require(mu_cylinder(ctx3, DigitSeq()) == 1, "empty cylinder mass != 1");
    Rational leaf_total = 0;
    std::function<void(const DigitSeq&, std::uint64_t)> walk =
        [&](const DigitSeq& node, std::uint64_t lev) {
            AllowedDigits w(cfg3, lev);
            Rational sum = 0;
            w.for_each([&](const BigInt& d) {
                DigitSeq child = node.extended(d);
                Rational m = mu_cylinder(ctx3, child);
                sum += m;
                if (lev == 3) leaf_total += m;
                else walk(child, lev + 1);
            });
            require(sum == mu_cylinder(ctx3, node), "sibling sum != parent mass");
        };
    walk(DigitSeq(), 1);
    require(leaf_total == 1, "depth-3 masses do not sum to 1");

    // Sampled branches at depth <= 8.
    E0Config cfg8 =
        E0Config::from_pattern(build_b(FamilySpec::affine_family(), 5, 3), 8);
    MeasureContext ctx8 = MeasureContext::make(cfg8);
    for (std::uint64_t salt : {1, 2}) {
        DigitSeq node;
        for (std::uint64_t lev = 1; lev <= 8; ++lev) {
            AllowedDigits w(cfg8, lev);
            Rational sum = 0;
            w.for_each([&](const BigInt& d) {
                sum += mu_cylinder(ctx8, node.extended(d));
            });
            require(sum == mu_cylinder(ctx8, node),
                    "sampled sibling sum != parent mass");
            const BigInt idx =
                BigInt(static_cast<unsigned long>(salt * 2654435761ull + lev)) %
                w.count();
            node = node.extended(w.nth(idx));
        }
    }
}

void criterion_6() {
    E0Config cfg =
        E0Config::from_pattern(build_b(FamilySpec::affine_family(), 5, 3), 31);
    MeasureContext ctx = MeasureContext::make(cfg);
    DimReport rep = dim_report(ctx, 30);
    require(rep.rows.size() == 30, "report row count");
    for (const DimRow& row : rep.rows) {
        require(std::fabs(row.A - oracle::analytic_bound(5, row.n)) <= 1e-9,
                "A_n deviates from the summation oracle at n=" +
                    std::to_string(row.n));
        require(row.L >= dim_bound_chain(5, row.n),
                "L_n below the bound chain at n=" + std::to_string(row.n));
    }
    require(std::fabs(rep.rows[0].A - 0.1369) < 1e-4, "A_1 != 0.1369");
    require(std::fabs(oracle::analytic_bound(5, 1) - 0.1369) < 1e-4,
            "oracle A_1 != 0.1369");
    require(rep.rows[29].A > 0.85, "A_30 <= 0.85");
    require(oracle::analytic_bound(5, 30) > 0.85, "oracle A_30 <= 0.85");
    const std::uint64_t picks[] = {1, 5, 10, 20, 30};
    for (std::size_t i = 1; i < 5; ++i) {
        require(rep.rows[picks[i] - 1].A > rep.rows[picks[i - 1] - 1].A,
                "A_n not increasing on {1,5,10,20,30}");
    }
}

void criterion_7() {
    PatternSeq none = build_b(FamilySpec::affine_family(), 5, 0);
    E0Config cfg0 = E0Config::from_pattern(none, 24);
    auto [e1, e2] = split_pair(cfg0, 12, 24);
    QLReport id = quasi_lipschitz_ratio(e1, e2, none);
    require(id.identity, "empty pattern not flagged as identity");
    require(id.r_lo == 1.0 && id.r_hi == 1.0, "empty pattern R != 1 exactly");
    require(id.sandwiches_ok(), "identity sandwiches failed");

    PatternSeq single = build_b(FamilySpec::parse("list: n"), 5, 1);
    double prev_dev = -1.0;
    for (std::uint64_t n : {10, 20, 30}) {
        E0Config cfg = E0Config::from_pattern(single, n + 12);
        auto [x, y] = split_pair(cfg, n, n + 12);
        QLReport r = quasi_lipschitz_ratio(x, y, single);
        require(r.n == n, "agreement depth miscounted");
        require(r.sandwiches_ok(),
                "sandwich inequality failed at n=" + std::to_string(n));
        require(r.l_bound_ok && r.tail_ratio_ok, "side conditions failed");
        const double dev =
            std::max(std::fabs(r.r_lo - 1.0), std::fabs(r.r_hi - 1.0));
        if (prev_dev >= 0.0) {
            require(dev <= prev_dev, "|R-1| increased with agreement depth");
        }
        prev_dev = dev;
    }
}

void criterion_8() {
    // Consecutive blocks fill a window of every requested length.
    for (std::uint64_t m : {3, 5, 8}) {
        std::string dsl = "list: ";
        for (std::uint64_t l = 1; l <= m; ++l) {
            dsl += "n+" + std::to_string(l);
            if (l < m) dsl += "; ";
        }
        FamilySpec fam = FamilySpec::parse(dsl);
        const std::uint64_t K = (std::uint64_t(1) << m) - 1;
        PatternSeq p = build_b(fam, 5, K);
        MergedPoint mp =
            merge_pi(sample_E0(E0Config::from_pattern(p, 5), 5, 2), p);
        DensityProfile prof =
            banach_density_profile(DigitSet::from_seq(mp.merged), {m});
        require(prof.entries[0].density == 1.0,
                "window " + std::to_string(m) + " not filled");
        require(prof.entries[0].start == p.thresholds.back() + 1,
                "filled window not at the final block");
    }

    // Translation / progression consistency law.
    std::mt19937_64 g(808);
    for (int i = 0; i < 1000; ++i) {
        DigitSet A(random_subset(g, 1, 80, 0.35));
        BigInt d = 1 + long(g() % 6);
        std::uint64_t k = 1 + g() % 8;
        std::vector<BigInt> b;
        for (std::uint64_t j = 1; j <= k; ++j) b.push_back(BigInt(j) * d);
        const bool translated = find_translation(A, DigitSet(b)).found;
        const bool progression = longest_ap(A, d).length >= k;
        require(translated == progression, "translation/AP law violated");
    }

    // Exhaustive oracle agreement on sets within [1, 60].
    std::mt19937_64 h(809);
    for (int i = 0; i < 120; ++i) {
        auto va = random_subset(h, 1, 60, 0.3);
        DigitSet A(va);
        for (long d = 1; d <= 60; ++d) {
            require(longest_ap(A, d).length == oracle::ap_length(va, d),
                    "AP length != oracle");
        }
        for (long q = 2; q <= 10; ++q) {
            require(longest_gp(A, q).length == oracle::gp_length(va, q),
                    "GP length != oracle");
        }
        for (std::uint64_t w : {1, 2, 3, 5, 8, 13}) {
            DensityProfile prof = banach_density_profile(A, {w});
            require(prof.entries[0].count == oracle::density_best(va, w).second,
                    "density count != oracle");
        }
        for (int t = 0; t < 3; ++t) {
            auto vb = random_subset(h, 1, 12, 0.3);
            DetectResult tr = find_translation(A, DigitSet(vb));
            auto otr = oracle::translation(va, vb);
            require(tr.found == otr.has_value(), "translation found != oracle");
            if (tr.found) require(tr.witness == *otr, "translation witness");
            DetectResult sc = find_scalar(A, DigitSet(vb));
            BigInt osc = oracle::scalar(va, vb);
            require(sc.found == (osc >= 0), "scalar found != oracle");
            if (sc.found) require(sc.witness == osc, "scalar witness");
            auto vp = random_subset(h, 2, 12, 0.3);
            DetectResult pw = find_power(A, DigitSet(vp));
            BigInt opw = oracle::power(va, vp);
            require(pw.found == (opw >= 0), "power found != oracle");
            if (pw.found) require(pw.witness == opw, "power witness");
        }
    }
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw Failure{"popen failed"};
    RunResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"cannot read " + path};
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void criterion_9() {
    const char* cli = std::getenv("ENGEL_CLI_PATH");
#ifdef ENGEL_CLI_PATH
    if (cli == nullptr) cli = ENGEL_CLI_PATH;
#endif
    require(cli != nullptr, "ENGEL_CLI_PATH not set");
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("engel_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string base = "'" + std::string(cli) +
                             "' construct --family affine --a 5 --K 3 "
                             "--depth 20 --seed 7 --out '";
    const std::string p1 = (dir / "r1.json").string();
    const std::string p2 = (dir / "r2.json").string();
    require(run_cmd(base + p1 + "' 2>/dev/null").code == 0, "first run failed");
    require(run_cmd(base + p2 + "' 2>/dev/null").code == 0, "second run failed");
    const std::string b1 = slurp(p1);
    require(b1 == slurp(p2), "runs are not byte-identical");

    Json manifest = Json::parse(slurp(p1 + ".manifest.json"));
    require(manifest["output_digest"] == digest_hex(b1),
            "manifest digest does not match the output bytes");
    const Json& mp = manifest["parameters"];
    const std::string p3 = (dir / "r3.json").string();
    std::string replay = "'" + std::string(cli) + "' construct";
    replay += " --family '" + mp["family"].get<std::string>() + "'";
    replay += " --a " + std::to_string(mp["a"].get<unsigned long>());
    replay += " --K " + std::to_string(mp["K"].get<std::uint64_t>());
    replay += " --depth " + std::to_string(mp["depth"].get<std::uint64_t>());
    replay += " --seed " + std::to_string(mp["seed"].get<std::uint64_t>());
    replay += " --search-cap " +
              std::to_string(mp["search_cap"].get<std::uint64_t>());
    replay += " --counts-N " + std::to_string(mp["counts_N"].get<std::uint64_t>());
    replay += " --out '" + p3 + "' 2>/dev/null";
    require(run_cmd(replay).code == 0, "manifest replay run failed");
    require(slurp(p3) == b1, "manifest replay is not byte-identical");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        void (*fn)();
        double limit; // seconds; 0 = unbounded
    };
    const Criterion table[] = {
        {1, "Engel digits and residual identity", criterion_1, 5.0},
        {2, "cylinder geometry", criterion_2, 5.0},
        {3, "threshold selection and b-counts", criterion_3, 60.0},
        {4, "#D_n bound and independent recounts", criterion_4, 30.0},
        {5, "measure additivity and normalization", criterion_5, 0.0},
        {6, "dimension quotient trends", criterion_6, 10.0},
        {7, "quasi-Lipschitz probe", criterion_7, 60.0},
        {8, "pattern detectors end to end", criterion_8, 60.0},
        {9, "construct reproducibility", criterion_9, 0.0},
    };
    int failures = 0;
    for (const Criterion& c : table) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string reason;
        bool pass = true;
        try {
            c.fn();
        } catch (const Failure& f) {
            pass = false;
            reason = f.reason;
        } catch (const std::exception& e) {
            pass = false;
            reason = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (pass && c.limit > 0.0 && secs > c.limit) {
            pass = false;
            reason = "runtime " + std::to_string(secs) + "s exceeds " +
                     std::to_string(c.limit) + "s";
        }
        if (pass) {
            std::printf("[PASS] criterion %d: %s (%.2f s)\n", c.id, c.name, secs);
        } else {
            std::printf("[FAIL] criterion %d: %s (%.2f s) %s\n", c.id, c.name,
                        secs, reason.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures;
}

#include "engel/construction.hpp"

#include "engel/errors.hpp"
#include "engel/rng.hpp"
#include "engel/xlog.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>

namespace engel {

E0Config E0Config::make(unsigned long a, std::vector<BigInt> forbidden,
                        std::uint64_t depth) {
    if (a < 5) throw range_error("E_0 needs a >= 5");
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    E0Config cfg;
    cfg.a = a;
    cfg.forbidden = std::move(forbidden);
    cfg.depth = depth;
    return cfg;
}

E0Config E0Config::from_pattern(const PatternSeq& pseq, std::uint64_t depth) {
    return make(pseq.a, pseq.values, depth);
}

BigInt E0Config::window_low(std::uint64_t n) const {
    return pow_ui(a, static_cast<unsigned long>(n));
}

BigInt E0Config::window_high(std::uint64_t n) const {
    return 2 * window_low(n);
}

AllowedDigits::AllowedDigits(const E0Config& cfg, std::uint64_t n) {
    if (n < 1 || n > cfg.depth) {
        throw range_error("level " + std::to_string(n) + " outside 1.." +
                          std::to_string(cfg.depth));
    }
    lo_ = cfg.window_low(n);
    hi_ = cfg.window_high(n);
    auto b = std::lower_bound(cfg.forbidden.begin(), cfg.forbidden.end(), lo_);
    auto e = std::lower_bound(b, cfg.forbidden.end(), hi_);
    excl_.assign(b, e);
    count_ = (hi_ - lo_) - BigInt(static_cast<unsigned long>(excl_.size()));
}

bool AllowedDigits::contains(const BigInt& d) const {
    if (d < lo_ || d >= hi_) return false;
    return !std::binary_search(excl_.begin(), excl_.end(), d);
}

BigInt AllowedDigits::nth(const BigInt& idx) const {
    if (idx < 0 || idx >= count_) throw range_error("digit rank out of range");
    // Exclusions ascend, so each pass shifts v past at most one of them.
    BigInt v = lo_ + idx;
    for (const auto& e : excl_) {
        if (e <= v) v += 1;
    }
    return v;
}

void AllowedDigits::for_each(const std::function<void(const BigInt&)>& fn) const {
    std::size_t ei = 0;
    for (BigInt v = lo_; v < hi_; ++v) {
        if (ei < excl_.size() && excl_[ei] == v) {
            ++ei;
            continue;
        }
        fn(v);
    }
}

std::vector<BigInt> AllowedDigits::to_vector() const {
    std::vector<BigInt> out;
    for_each([&](const BigInt& d) { out.push_back(d); });
    return out;
}

AllowedDigits allowed_digits(const E0Config& cfg, std::uint64_t n) {
    return AllowedDigits(cfg, n);
}

const BigInt& DnTable::product(std::uint64_t n) const {
    if (n == 0) return one_;
    if (n > rows.size()) throw range_error("Dn level beyond table");
    return rows[n - 1].product;
}

double DnTable::log_product(std::uint64_t n) const {
    if (n == 0) return 0.0;
    if (n > rows.size()) throw range_error("Dn level beyond table");
    return rows[n - 1].log_product;
}

DnTable count_Dn(const E0Config& cfg, std::uint64_t n) {
    DnTable table;
    table.a = cfg.a;
    BigInt product = 1;
    std::vector<BigInt> factors;
    bool degenerate = false;
    for (std::uint64_t k = 1; k <= n; ++k) {
        AllowedDigits w(cfg, k);
        product *= w.count();
        if (w.count() == 0) degenerate = true;
        else factors.push_back(w.count());
        DnRow row;
        row.level = k;
        row.excluded = w.excluded_count();
        row.allowed = w.count();
        row.product = product;
        row.log_product =
            degenerate ? -std::numeric_limits<double>::infinity() : log_sum(factors);
        table.rows.push_back(std::move(row));
    }
    return table;
}

DnBoundReport check_Dn_bound(const E0Config& cfg, std::uint64_t N) {
    DnTable table = count_Dn(cfg, N);
    DnBoundReport rep;
    rep.ok = true;
    for (std::uint64_t n = 1; n <= N; ++n) {
        DnBoundRow row;
        row.level = n;
        row.strictly_greater = exceeds_pow_minus_sqrt_product(
            table.product(n), cfg.a, static_cast<unsigned long>(n));
        row.log_margin = table.log_product(n) -
                         log_sum_pow_minus_sqrt(cfg.a, static_cast<unsigned long>(n));
        if (!row.strictly_greater) rep.ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

DigitSeq sample_E0(const E0Config& cfg, std::uint64_t depth, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<BigInt> out;
    out.reserve(depth);
    for (std::uint64_t n = 1; n <= depth; ++n) {
        AllowedDigits w(cfg, n);
        if (w.count() == 0) {
            throw empty_window_error("level " + std::to_string(n) +
                                     " has no allowed digits");
        }
        out.push_back(w.nth(uniform_below(rng, w.count())));
    }
    return DigitSeq(std::move(out), /*strict=*/true);
}

MergedPoint merge_pi(const DigitSeq& source, const PatternSeq& pseq) {
    const auto& s = source.digits();
    const auto& b = pseq.values;
    std::vector<BigInt> merged;
    merged.reserve(s.size() + b.size());
    std::merge(s.begin(), s.end(), b.begin(), b.end(), std::back_inserter(merged));
    auto dup = std::adjacent_find(merged.begin(), merged.end());
    if (dup != merged.end()) {
        throw disjointness_error("pattern value " + to_decimal(*dup) +
                                 " collides with a source digit");
    }
    MergedPoint mp;
    mp.a = pseq.a;
    mp.depth = source.size();
    mp.source = source;
    mp.inserted = b;
    mp.merged = DigitSeq(std::move(merged), /*strict=*/true);
    if (mp.merged.size() <= kExactDepthLimit) {
        std::size_t bits = 0;
        for (const auto& d : mp.merged.digits()) bits += bit_length(d);
        if (bits <= kValueBitBudget) mp.value = partial_sum(mp.merged);
    }
    return mp;
}

ContainmentReport verify_pattern_containment(const MergedPoint& merged,
                                             const FamilySpec& spec,
                                             const PatternSeq& pseq,
                                             std::uint64_t K) {
    if (K > pseq.K) throw range_error("K exceeds the pattern sequence's K");
    const auto& dig = merged.merged.digits();
    ContainmentReport rep;
    rep.ok = true;
    for (std::uint64_t k = 1; k <= K; ++k) {
        ContainmentWitness w;
        w.k = k;
        w.t = pseq.thresholds[k - 1];
        for (const auto& f : finite_subset(spec, k)) w.values.push_back(f.eval(w.t));
        std::sort(w.values.begin(), w.values.end());
        for (const auto& p : pseq.provenance) {
            if (p.k == k &&
                !std::binary_search(w.values.begin(), w.values.end(), p.value)) {
                throw std::logic_error("pattern provenance disagrees with the "
                                       "re-derived block values");
            }
        }
        for (const auto& v : w.values) {
            if (!std::binary_search(dig.begin(), dig.end(), v)) w.missing.push_back(v);
        }
        w.present = w.missing.empty();
        if (!w.present) rep.ok = false;
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

namespace {

// |I_n| = 1/(d_1...d_{n-1} d_n (d_n - 1)), exact.
Rational exact_length(const std::vector<BigInt>& d) {
    BigInt den = 1;
    for (std::size_t j = 0; j + 1 < d.size(); ++j) den *= d[j];
    den *= d.back();
    den *= d.back() - 1;
    Rational r(BigInt(1), den);
    r.canonicalize();
    return r;
}

void require_e0_prefix(const DigitSeq& s, const E0Config& cfg, const char* which) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        AllowedDigits w(cfg, j + 1);
        if (!w.contains(s[j])) {
            throw admissibility_error(std::string(which) + ": digit at level " +
                                      std::to_string(j + 1) +
                                      " leaves its window or hits a pattern value");
        }
    }
}

// Deep prefix of pi(x): the source digits merged with every pattern
// value below a^(depth+1); anything larger is outranked by the digits
// the prefix does not reach.
DigitSeq merge_deep(const DigitSeq& s, const PatternSeq& pseq, unsigned long a) {
    BigInt cutoff = pow_ui(a, static_cast<unsigned long>(s.size()) + 1);
    auto end = std::lower_bound(pseq.values.begin(), pseq.values.end(), cutoff);
    std::vector<BigInt> m;
    m.reserve(s.size() + std::size_t(end - pseq.values.begin()));
    std::merge(s.digits().begin(), s.digits().end(), pseq.values.begin(), end,
               std::back_inserter(m));
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
        throw disjointness_error("pattern value collides with a source digit");
    }
    return DigitSeq(std::move(m), /*strict=*/true);
}

} // namespace

QLReport quasi_lipschitz_ratio(const DigitSeq& x1in, const DigitSeq& x2in,
                               const PatternSeq& pseq) {
    E0Config cfg = E0Config::make(pseq.a, pseq.values,
                                  std::max(x1in.size(), x2in.size()));
    require_e0_prefix(x1in, cfg, "x1");
    require_e0_prefix(x2in, cfg, "x2");

    std::size_t common = 0;
    const std::size_t lim = std::min(x1in.size(), x2in.size());
    while (common < lim && x1in[common] == x2in[common]) ++common;
    if (common == lim) {
        throw insufficient_depth_error("prefixes do not differ within the given depth");
    }
    if (common == 0) {
        throw insufficient_depth_error("prefixes share no digit; agreement depth "
                                       "n >= 1 is required");
    }
    const std::size_t n = common;

    // Normalize to the convention d_{n+1}(x1) > d_{n+1}(x2); x1's cylinder
    // then lies left of x2's.
    const bool flip = x1in[n] < x2in[n];
    const DigitSeq& s1 = flip ? x2in : x1in;
    const DigitSeq& s2 = flip ? x1in : x2in;

    QLReport rep;
    rep.n = n;
    rep.d1 = s1[n];
    rep.d2 = s2[n];

    const Rational l1 = partial_sum(s1);
    const Rational r1 = l1 + exact_length(s1.digits());
    const Rational l2 = partial_sum(s2);
    const Rational r2 = l2 + exact_length(s2.digits());
    rep.x_gap_lo = l2 - r1;
    rep.x_gap_hi = r2 - l1;
    if (!(rep.x_gap_lo > 0)) {
        throw insufficient_depth_error("prefixes too shallow to certify a positive gap");
    }

    DigitSeq m1 = merge_deep(s1, pseq, cfg.a);
    DigitSeq m2 = merge_deep(s2, pseq, cfg.a);
    const std::size_t l =
        std::size_t(std::lower_bound(pseq.values.begin(), pseq.values.end(), rep.d2) -
                    pseq.values.begin());
    rep.l = l;
    if (m1.size() < n + l + 2 || m2.size() < n + l + 2 ||
        !std::equal(m1.digits().begin(), m1.digits().begin() + std::ptrdiff_t(n + l),
                    m2.digits().begin()) ||
        m1[n + l] == m2[n + l] || m2[n + l] != rep.d2) {
        throw std::logic_error("merged prefixes do not split at position n+l+1");
    }

    const Rational ml1 = partial_sum(m1);
    const Rational mr1 = ml1 + exact_length(m1.digits());
    const Rational ml2 = partial_sum(m2);
    const Rational mr2 = ml2 + exact_length(m2.digits());
    rep.y_gap_lo = ml2 - mr1;
    rep.y_gap_hi = mr2 - ml1;
    if (!(rep.y_gap_lo > 0)) {
        throw insufficient_depth_error("merged prefixes too shallow to certify a "
                                       "positive gap");
    }

    const Rational two_a2(2 * BigInt(cfg.a) * cfg.a);
    std::vector<BigInt> shared(s1.digits().begin(), s1.digits().begin() + std::ptrdiff_t(n));
    rep.sandwich_x_upper = rep.x_gap_hi <= exact_length(shared);
    shared.push_back(rep.d2);
    rep.sandwich_x_lower = exact_length(shared) / two_a2 <= rep.x_gap_lo;

    std::vector<BigInt> mshared(m2.digits().begin(),
                                m2.digits().begin() + std::ptrdiff_t(n + l));
    rep.sandwich_y_upper = rep.y_gap_hi <= exact_length(mshared);
    mshared.push_back(rep.d2);
    rep.sandwich_y_lower = exact_length(mshared) / two_a2 <= rep.y_gap_lo;

    rep.l_bound_ok = l * l < n + 1;
    rep.tail_ratio_ok = (rep.d2 - 1) * 2 * BigInt(cfg.a) * cfg.a > rep.d2;

    if (pseq.values.empty()) {
        // pi is the identity pointwise, so R = 1 exactly even though the
        // two distances are only bracketed.
        rep.identity = true;
        rep.r_lo = 1.0;
        rep.r_hi = 1.0;
    } else {
        const double ly_hi = log_rational(rep.y_gap_hi);
        const double ly_lo = log_rational(rep.y_gap_lo);
        const double lx_hi = log_rational(rep.x_gap_hi);
        const double lx_lo = log_rational(rep.x_gap_lo);
        double rlo = ly_hi / lx_lo;
        double rhi = ly_lo / lx_hi;
        const double inf = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) {
            rlo = std::nextafter(rlo, -inf);
            rhi = std::nextafter(rhi, inf);
        }
        rep.r_lo = rlo;
        rep.r_hi = rhi;
    }
    return rep;
}

} // namespace engel

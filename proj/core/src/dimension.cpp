#include "engel/dimension.hpp"

#include "engel/errors.hpp"
#include "engel/xlog.hpp"

#include <string>

namespace engel {

namespace {

void require_admissible_for_e0(const E0Config& cfg, const DigitSeq& seq) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (!AllowedDigits(cfg, j + 1).contains(seq[j])) {
            throw admissibility_error("digit at level " + std::to_string(j + 1) +
                                      " is not an allowed E_0 digit");
        }
    }
}

// Denominator of both quotients over the window ceiling:
//   sum_{k=1}^{n+1} log(2a^k) + log(2a^{n+1})
double log_window_ceiling(unsigned long a, std::uint64_t n) {
    std::vector<BigInt> factors;
    factors.reserve(std::size_t(n) + 2);
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
        factors.push_back(2 * pow_ui(a, static_cast<unsigned long>(k)));
    }
    factors.push_back(2 * pow_ui(a, static_cast<unsigned long>(n + 1)));
    return log_sum(factors);
}

} // namespace

MeasureContext MeasureContext::make(const E0Config& cfg) {
    return MeasureContext{cfg, count_Dn(cfg, cfg.depth)};
}

Rational mu_cylinder(const MeasureContext& ctx, const DigitSeq& seq) {
    require_admissible_for_e0(ctx.cfg, seq);
    Rational mass(BigInt(1), ctx.dn.product(seq.size()));
    mass.canonicalize();
    return mass;
}

double local_dim_quotient(const MeasureContext& ctx, const DigitSeq& seq) {
    if (seq.size() < 2) {
        throw insufficient_depth_error("local dimension quotient needs depth >= 2");
    }
    require_admissible_for_e0(ctx.cfg, seq);
    const std::uint64_t n = seq.size() - 1;

    Rational num(ctx.dn.product(n), BigInt(4));
    num.canonicalize();

    std::vector<BigInt> factors(seq.digits());
    factors.push_back(seq.digits().back() - 1);
    return log_rational(num) / log_sum(factors);
}

double analytic_lower_bound(unsigned long a, std::uint64_t n) {
    if (a < 5) throw range_error("analytic bound needs a >= 5");
    if (n < 1) throw range_error("analytic bound needs n >= 1");
    return log_sum_pow_minus_sqrt(a, static_cast<unsigned long>(n)) /
           log_window_ceiling(a, n);
}

double dim_bound_chain(unsigned long a, std::uint64_t n) {
    if (a < 5) throw range_error("bound chain needs a >= 5");
    if (n < 1) throw range_error("bound chain needs n >= 1");
    return (log_sum_pow_minus_sqrt(a, static_cast<unsigned long>(n)) -
            log_big(BigInt(4))) /
           log_window_ceiling(a, n);
}

LengthRatio length_asymptotic_ratio(const DigitSeq& seq, unsigned long a) {
    if (a < 2) throw range_error("length ratio needs a >= 2");
    if (seq.empty()) throw range_error("length ratio needs depth >= 1");
    const std::uint64_t n = seq.size();
    BigInt lo = a, hi = 2 * BigInt(a);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (seq[j] < lo || seq[j] >= hi) {
            throw admissibility_error("digit at level " + std::to_string(j + 1) +
                                      " leaves its window");
        }
        lo *= a;
        hi *= a;
    }

    std::vector<BigInt> factors(seq.digits());
    factors.push_back(seq.digits().back() - 1);

    const double log_a = log_big(BigInt(a));
    const double half_n2_log_a = 0.5 * double(n) * double(n) * log_a;
    LengthRatio r;
    r.ratio = log_sum(factors) / half_n2_log_a;
    r.env_lo = double(n + 1) / double(n);
    r.env_hi = r.env_lo * (log_big(2 * BigInt(a)) / log_a);
    return r;
}

DimReport dim_report(const MeasureContext& ctx, std::uint64_t N) {
    if (N < 1) throw range_error("report needs N >= 1");
    if (N + 1 > ctx.cfg.depth) {
        throw range_error("report depth N+1 exceeds the configured depth");
    }
    std::vector<BigInt> minimal;
    minimal.reserve(std::size_t(N) + 1);
    for (std::uint64_t k = 1; k <= N + 1; ++k) {
        AllowedDigits w(ctx.cfg, k);
        if (w.count() == 0) {
            throw empty_window_error("level " + std::to_string(k) +
                                     " has no allowed digits");
        }
        minimal.push_back(w.nth(0));
    }
    DigitSeq path(minimal, /*strict=*/true);

    DimReport rep;
    rep.a = ctx.cfg.a;
    for (std::uint64_t n = 1; n <= N; ++n) {
        DimRow row;
        row.n = n;
        row.L = local_dim_quotient(ctx, path.prefix(std::size_t(n) + 1));
        row.A = analytic_lower_bound(ctx.cfg.a, n);
        row.length_ratio = length_asymptotic_ratio(path.prefix(std::size_t(n)), ctx.cfg.a).ratio;
        row.dn_margin = ctx.dn.log_product(n) -
                        log_sum_pow_minus_sqrt(ctx.cfg.a, static_cast<unsigned long>(n));
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace engel

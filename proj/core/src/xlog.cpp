#include "engel/xlog.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <stdexcept>

namespace engel {

unsigned log_precision_bits() {
    static const unsigned bits = [] {
        unsigned b = 128;
        if (const char* env = std::getenv("ENGEL_PRECISION_BITS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) b = static_cast<unsigned>(v);
        }
        if (b < 64) b = 64;
        if (b > 16384) b = 16384;
        return b;
    }();
    return bits;
}

namespace {

struct Real {
    mpfr_t v;
    explicit Real(unsigned prec) { mpfr_init2(v, prec); }
    ~Real() { mpfr_clear(v); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
};

} // namespace

double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned prec = log_precision_bits();
    Real t(prec), r(prec);
    mpfr_set_z(t.v, x.get_mpz_t(), MPFR_RNDN);
    mpfr_log(r.v, t.v, MPFR_RNDN);
    return mpfr_get_d(r.v, MPFR_RNDN);
}

double log_rational(const Rational& x) {
    if (x <= 0) throw std::domain_error("log_rational: argument must be positive");
    const unsigned prec = log_precision_bits();
    Real t(prec), r(prec);
    mpfr_set_q(t.v, x.get_mpq_t(), MPFR_RNDN);
    mpfr_log(r.v, t.v, MPFR_RNDN);
    return mpfr_get_d(r.v, MPFR_RNDN);
}

double log_sum(const std::vector<BigInt>& xs) {
    const unsigned prec = log_precision_bits();
    Real acc(prec), t(prec), lg(prec);
    mpfr_set_zero(acc.v, 1);
    for (const BigInt& x : xs) {
        if (x <= 0) throw std::domain_error("log_sum: argument must be positive");
        mpfr_set_z(t.v, x.get_mpz_t(), MPFR_RNDN);
        mpfr_log(lg.v, t.v, MPFR_RNDN);
        mpfr_add(acc.v, acc.v, lg.v, MPFR_RNDN);
    }
    return mpfr_get_d(acc.v, MPFR_RNDN);
}

double log_sum_pow_minus_sqrt(unsigned long a, unsigned long n) {
    const unsigned prec = log_precision_bits();
    Real acc(prec), term(prec), sk(prec), lg(prec);
    mpfr_set_zero(acc.v, 1);
    BigInt ak = 1;
    for (unsigned long k = 1; k <= n; ++k) {
        ak *= a;
        mpfr_sqrt_ui(sk.v, k, MPFR_RNDN);
        mpfr_set_z(term.v, ak.get_mpz_t(), MPFR_RNDN);
        mpfr_sub(term.v, term.v, sk.v, MPFR_RNDN);
        if (mpfr_sgn(term.v) <= 0)
            throw std::domain_error("log_sum_pow_minus_sqrt: a^k <= sqrt(k)");
        mpfr_log(lg.v, term.v, MPFR_RNDN);
        mpfr_add(acc.v, acc.v, lg.v, MPFR_RNDN);
    }
    return mpfr_get_d(acc.v, MPFR_RNDN);
}

bool exceeds_pow_minus_sqrt_product(const BigInt& lhs, unsigned long a,
                                    unsigned long n) {
    // prod (a^k - sqrt(k)) is irrational for n >= 2, so raising precision
    // must eventually separate it from the integer lhs.
    for (unsigned prec = log_precision_bits(); prec <= 1u << 20; prec *= 2) {
        Real up(prec), dn(prec), sk(prec), t(prec);
        mpfr_set_ui(up.v, 1, MPFR_RNDU);
        mpfr_set_ui(dn.v, 1, MPFR_RNDD);
        BigInt ak = 1;
        bool ok = true;
        for (unsigned long k = 1; k <= n && ok; ++k) {
            ak *= a;
            // upward product: subtract sqrt rounded down, multiply up
            mpfr_sqrt_ui(sk.v, k, MPFR_RNDD);
            mpfr_set_z(t.v, ak.get_mpz_t(), MPFR_RNDU);
            mpfr_sub(t.v, t.v, sk.v, MPFR_RNDU);
            if (mpfr_sgn(t.v) <= 0) { ok = false; break; }
            mpfr_mul(up.v, up.v, t.v, MPFR_RNDU);
            // downward product
            mpfr_sqrt_ui(sk.v, k, MPFR_RNDU);
            mpfr_set_z(t.v, ak.get_mpz_t(), MPFR_RNDD);
            mpfr_sub(t.v, t.v, sk.v, MPFR_RNDD);
            if (mpfr_sgn(t.v) < 0) { ok = false; break; }
            mpfr_mul(dn.v, dn.v, t.v, MPFR_RNDD);
        }
        if (!ok) return lhs > 0; // some factor <= 0 makes the product vacuous
        if (mpfr_cmp_z(up.v, lhs.get_mpz_t()) < 0) return true;  // lhs > upper
        if (mpfr_cmp_z(dn.v, lhs.get_mpz_t()) >= 0) return false; // lhs <= lower
        // interval straddles lhs: retry at doubled precision
    }
    throw std::runtime_error(
        "exceeds_pow_minus_sqrt_product: comparison did not resolve");
}

} // namespace engel

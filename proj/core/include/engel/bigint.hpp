#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace engel {

// Arbitrary-precision integers and reduced fractions. GMP's canonical
// classes already maintain the invariants we need (mpq_class keeps
// gcd(|num|, den) = 1 and den >= 1), so they are used directly rather
// than wrapped.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// floor(sqrt(x)), x >= 0
inline BigInt isqrt(const BigInt& x) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

// floor(x^(1/k)), x >= 0, k >= 1
inline BigInt iroot(const BigInt& x, unsigned long k) {
    BigInt r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

// Number of bits in |x| (0 for x = 0).
inline std::size_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

// Base-10 string conversion. The mpz_class string constructor infers the
// base from the prefix, so "025" would silently read as octal; literals
// coming from text always go through here instead.
inline BigInt from_decimal(const std::string& s) {
    BigInt r;
    if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0) {
        throw std::invalid_argument("not a decimal integer: " + s);
    }
    return r;
}

} // namespace engel

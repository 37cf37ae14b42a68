#pragma once

#include "engel/bigint.hpp"

#include <vector>

namespace engel {

// Natural logarithms of exact integers and rationals, evaluated in
// extended precision (MPFR) and rounded once to double at the end.
// Working precision comes from ENGEL_PRECISION_BITS (default 128,
// clamped to [64, 16384]), read once per process.

unsigned log_precision_bits();

// log(x), x > 0
double log_big(const BigInt& x);

// log(x), x > 0
double log_rational(const Rational& x);

// Sum of log(x_i) accumulated at full working precision before the
// final rounding; the relative error stays far below 1e-12 even for
// thousands of terms.
double log_sum(const std::vector<BigInt>& xs);

// sum_{k=1}^{n} log(a^k - sqrt(k)), accumulated in extended precision.
double log_sum_pow_minus_sqrt(unsigned long a, unsigned long n);

// Directed-rounding comparison: is lhs > prod_{k=1}^{n} (a^k - sqrt(k))?
// Certified via interval evaluation of the product; raises precision
// until the comparison is unambiguous.
bool exceeds_pow_minus_sqrt_product(const BigInt& lhs, unsigned long a,
                                    unsigned long n);

} // namespace engel

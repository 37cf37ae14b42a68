#pragma once

#include "engel/bigint.hpp"
#include "engel/rational.hpp"

#include <cstddef>
#include <vector>

namespace engel {

// A finite admissible prefix of Engel digits: d_1 >= 2 and d_{j+1} >= d_j.
// With the strict flag set, d_{j+1} > d_j is enforced as well.
class DigitSeq {
public:
    DigitSeq() = default;

    // Validates admissibility; throws admissibility_error.
    explicit DigitSeq(std::vector<BigInt> digits, bool strict = false);

    const std::vector<BigInt>& digits() const { return digits_; }
    bool strict() const { return strict_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    const BigInt& operator[](std::size_t i) const { return digits_[i]; }

    // First n digits (n <= size).
    DigitSeq prefix(std::size_t n) const;

    // Appends one digit, revalidating the order constraint.
    DigitSeq extended(const BigInt& d) const;

private:
    std::vector<BigInt> digits_;
    bool strict_ = false;
};

// True iff d_1 >= 2 and the sequence is nondecreasing (strictly
// increasing when strict). Total: never throws.
bool is_admissible(const std::vector<BigInt>& digits, bool strict = false);

// d_1(x) = floor(1/x) + 1 for x in (0,1]. Result >= 2.
// Throws std::domain_error outside the domain.
BigInt first_digit(const Rational& x);

// T(x) = x*d_1(x) - 1, exactly; maps (0,1] to (0,1].
Rational engel_map(const Rational& x);

// First n digits of x, by the integer-pair recurrence
//   d = floor(q/p) + 1,  (p, q) <- (p*d - q, q)
// which avoids per-step rational normalization and is equivalent to
// iterating the Engel map.
DigitSeq digits(const Rational& x, std::size_t n);

// sum_{j=1}^{n} 1/(d_1...d_j), exact. Equals the left endpoint of the
// cylinder of seq.
Rational partial_sum(const DigitSeq& seq);

} // namespace engel

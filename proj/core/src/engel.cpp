#include "engel/engel.hpp"

#include "engel/errors.hpp"

#include <stdexcept>
#include <utility>

namespace engel {

DigitSeq::DigitSeq(std::vector<BigInt> digits, bool strict)
    : digits_(std::move(digits)), strict_(strict) {
    if (!is_admissible(digits_, strict_))
        throw admissibility_error(strict_
                                      ? "digit sequence is not strictly increasing from d_1 >= 2"
                                      : "digit sequence is not admissible (d_1 >= 2, nondecreasing)");
}

DigitSeq DigitSeq::prefix(std::size_t n) const {
    if (n > digits_.size()) throw range_error("prefix longer than sequence");
    DigitSeq out;
    out.digits_.assign(digits_.begin(), digits_.begin() + n);
    out.strict_ = strict_;
    return out;
}

DigitSeq DigitSeq::extended(const BigInt& d) const {
    if (!digits_.empty()) {
        if (strict_ ? !(d > digits_.back()) : !(d >= digits_.back()))
            throw admissibility_error("extension digit violates order constraint");
    } else if (d < 2) {
        throw admissibility_error("d_1 must be >= 2");
    }
    DigitSeq out = *this;
    out.digits_.push_back(d);
    return out;
}

bool is_admissible(const std::vector<BigInt>& digits, bool strict) {
    if (digits.empty()) return true;
    if (digits.front() < 2) return false;
    for (std::size_t j = 1; j < digits.size(); ++j) {
        if (strict ? !(digits[j] > digits[j - 1]) : !(digits[j] >= digits[j - 1]))
            return false;
    }
    return true;
}

BigInt first_digit(const Rational& x) {
    require_unit_interval(x);
    BigInt d;
    mpz_fdiv_q(d.get_mpz_t(), x.get_den().get_mpz_t(), x.get_num().get_mpz_t());
    return d + 1;
}

Rational engel_map(const Rational& x) {
    return x * Rational(first_digit(x)) - 1;
}

DigitSeq digits(const Rational& x, std::size_t n) {
    require_unit_interval(x);
    if (n == 0) throw std::domain_error("digit count must be >= 1");
    std::vector<BigInt> out;
    out.reserve(n);
    BigInt p = x.get_num(), q = x.get_den();
    for (std::size_t i = 0; i < n; ++i) {
        BigInt d = q / p + 1;     // floor: p, q > 0
        out.push_back(d);
        p = p * d - q;            // stays in [1, p]
    }
    return DigitSeq(std::move(out));
}

Rational partial_sum(const DigitSeq& seq) {
    if (seq.empty()) throw admissibility_error("partial_sum of empty sequence");
    // Backwards accumulation of (1 + (1 + ...)/d_{j+1})/d_j:
    //   num_j = num_{j+1} + den_{j+1},  den_j = d_j * den_{j+1}
    const auto& d = seq.digits();
    BigInt num = 1;
    BigInt den = d.back();
    for (std::size_t j = d.size() - 1; j-- > 0;) {
        num += den;
        den *= d[j];
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace engel

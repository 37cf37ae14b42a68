#pragma once

#include "engel/engel.hpp"

#include <cstdint>
#include <vector>

namespace engel {

// A digit-sequence prefix viewed as a set of positive integers.
class DigitSet {
public:
    DigitSet() = default;

    // Sorts and deduplicates; every element must be >= 1.
    explicit DigitSet(std::vector<BigInt> values);
    static DigitSet from_seq(const DigitSeq& seq);

    const std::vector<BigInt>& values() const { return v_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    bool contains(const BigInt& x) const;
    const BigInt& min() const; // throws range_error on empty
    const BigInt& max() const;

private:
    std::vector<BigInt> v_;
};

struct DensityEntry {
    std::uint64_t window = 0;
    BigInt start;              // best window start m
    std::uint64_t count = 0;   // #{i in A : m <= i < m+w}
    double density = 0.0;      // count / w, <= 1
};

struct DensityProfile {
    std::vector<DensityEntry> entries;
};

// Finite-order upper Banach density: for each window length w the best
// count over all starts. The optimum is attained with the window
// starting at an element, so the scan is a two-pointer pass. Ties go to
// the smallest start. Throws range_error on an empty set or a zero
// window.
DensityProfile banach_density_profile(const DigitSet& A,
                                      const std::vector<std::uint64_t>& windows);

struct ProgressionResult {
    std::uint64_t length = 0;
    BigInt start; // valid when length >= 1; smallest among maximal chains
    BigInt step;  // the queried d (arithmetic) or q (geometric)
};

// Maximal k with {t, t+d, ..., t+(k-1)d} contained in A. d >= 1.
ProgressionResult longest_ap(const DigitSet& A, const BigInt& d);

// Maximal k with {t, t q, ..., t q^(k-1)} contained in A. q >= 2.
ProgressionResult longest_gp(const DigitSet& A, const BigInt& q);

struct DetectResult {
    bool found = false;
    BigInt witness;        // minimal n (smallest |n| for translations)
    BigInt bound_searched; // the witness search is complete up to this bound
};

// An integer n with B + n contained in A, or none. Negative shifts count;
// among all witnesses the one of smallest magnitude is returned, with the
// nonnegative one preferred on a tie. Complete because a successful n
// puts min(B)+n on an element of A.
DetectResult find_translation(const DigitSet& A, const DigitSet& B);

// Minimal n >= 1 with n*B contained in A; candidates are the elements of
// A divisible by min(B), so the search is complete up to max(A)/min(B).
DetectResult find_scalar(const DigitSet& A, const DigitSet& B);

// Minimal n >= 1 with {x^n : x in B} contained in A; every element of B
// must be >= 2, so exponents beyond log_min(B) max(A) cannot succeed.
DetectResult find_power(const DigitSet& A, const DigitSet& B);

} // namespace engel

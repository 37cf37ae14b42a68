#pragma once

#include "engel/cylinder.hpp"
#include "engel/family.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace engel {

// Parameters of the auxiliary set E_0: the level-n digit is drawn from
// [a^n, 2a^n) minus the pattern values. Windows never overlap: for
// a >= 2, 2a^n <= a^(n+1), so any choice is strictly increasing.
struct E0Config {
    unsigned long a = 5;
    std::vector<BigInt> forbidden; // sorted strictly increasing
    std::uint64_t depth = 20;

    // Validates a >= 5 and canonicalizes the forbidden set.
    static E0Config make(unsigned long a, std::vector<BigInt> forbidden,
                         std::uint64_t depth);
    static E0Config from_pattern(const PatternSeq& pseq, std::uint64_t depth);

    BigInt window_low(std::uint64_t n) const;  // a^n, inclusive
    BigInt window_high(std::uint64_t n) const; // 2 a^n, exclusive
};

// The level-n window with exclusions applied, addressable by rank so
// that uniform sampling never materializes the window.
class AllowedDigits {
public:
    AllowedDigits(const E0Config& cfg, std::uint64_t n);

    const BigInt& count() const { return count_; }     // a^n - c_n
    std::uint64_t excluded_count() const { return excl_.size(); }
    bool contains(const BigInt& d) const;

    // idx-th allowed digit in increasing order, 0-based.
    BigInt nth(const BigInt& idx) const;

    // Ascending enumeration; cost is linear in the window size, so this
    // is for small levels only.
    void for_each(const std::function<void(const BigInt&)>& fn) const;
    std::vector<BigInt> to_vector() const;

private:
    BigInt lo_, hi_, count_;
    std::vector<BigInt> excl_; // exclusions inside [lo_, hi_), ascending
};

AllowedDigits allowed_digits(const E0Config& cfg, std::uint64_t n);

struct DnRow {
    std::uint64_t level = 0;
    std::uint64_t excluded = 0; // c_k
    BigInt allowed;             // a^k - c_k
    BigInt product;             // #D_level
    double log_product = 0.0;
};

// Exact cardinalities #D_n = prod_{k<=n} (a^k - c_k), with #D_0 = 1.
struct DnTable {
    unsigned long a = 0;
    std::vector<DnRow> rows; // rows[k-1] is level k

    const BigInt& product(std::uint64_t n) const; // n <= rows.size()
    double log_product(std::uint64_t n) const;

private:
    BigInt one_ = 1;
};

DnTable count_Dn(const E0Config& cfg, std::uint64_t n);

struct DnBoundRow {
    std::uint64_t level = 0;
    double log_margin = 0.0; // log #D_n - sum_{k<=n} log(a^k - sqrt(k))
    bool strictly_greater = false;
};

struct DnBoundReport {
    bool ok = false; // #D_n > prod_{k<=n} (a^k - sqrt(k)) for every n <= N
    std::vector<DnBoundRow> rows;
};

// Certified comparison per level via directed rounding; the margins are
// informational (double precision), the booleans are exact.
DnBoundReport check_Dn_bound(const E0Config& cfg, std::uint64_t N);

// One allowed digit per level, uniform by rank, from a seeded SplitMix64
// stream. Identical seeds give identical sequences on every platform.
DigitSeq sample_E0(const E0Config& cfg, std::uint64_t depth, std::uint64_t seed);

// A finite-order image point of the insertion map pi: the sorted
// disjoint union of an E_0 prefix with the pattern values. value is the
// partial sum of the merged prefix, computed only while the merged
// sequence is short enough to print as an exact rational (depth at most
// kExactDepthLimit and total digit size at most kValueBitBudget).
struct MergedPoint {
    unsigned long a = 5;
    std::uint64_t seed = 0;  // provenance, filled by the sampling pipeline
    std::uint64_t depth = 0; // source depth
    DigitSeq source;
    std::vector<BigInt> inserted;
    DigitSeq merged;
    std::optional<Rational> value;
};

inline constexpr std::size_t kValueBitBudget = std::size_t{1} << 16;

// Throws disjointness_error if a pattern value collides with a source
// digit (the source was not an E_0 prefix for this pattern).
MergedPoint merge_pi(const DigitSeq& source, const PatternSeq& pseq);

struct ContainmentWitness {
    std::uint64_t k = 0;
    BigInt t;                    // threshold t_k
    std::vector<BigInt> values;  // {f(t_k) : f in F_k}
    std::vector<BigInt> missing; // values absent from the merged digits
    bool present = false;
};

struct ContainmentReport {
    bool ok = false;
    std::vector<ContainmentWitness> witnesses;
};

// For each k <= K, re-derives F_k from the family spec, evaluates at the
// recorded threshold, cross-checks against the pattern provenance, and
// confirms the block is contained in the merged digit set.
ContainmentReport verify_pattern_containment(const MergedPoint& merged,
                                             const FamilySpec& spec,
                                             const PatternSeq& pseq,
                                             std::uint64_t K);

// Quasi-Lipschitz probe. Inputs are two deep E_0 prefixes that share
// exactly n >= 1 digits and differ at position n+1; every reported
// quantity is certified for ALL pairs x1, x2 of E_0 points extending the
// two prefixes. Distances are bracketed by exact cylinder endpoints at
// the full given depth; the ratio interval adds a 4-ulp pad for the
// final double rounding of the logarithms.
//
// Digits are normalized to the convention d1 > d2 (x1's cylinder lies
// left of x2's). l counts pattern values below d2; the merged prefixes
// then share exactly n+l digits.
struct QLReport {
    std::uint64_t n = 0;
    std::uint64_t l = 0;
    BigInt d1, d2;              // differing digits, d1 > d2
    Rational x_gap_lo, x_gap_hi; // |x1 - x2| bracket
    Rational y_gap_lo, y_gap_hi; // |pi(x1) - pi(x2)| bracket
    double r_lo = 0.0, r_hi = 0.0; // log|pi(x1)-pi(x2)| / log|x1-x2|
    bool identity = false;       // empty pattern: pi = id and R = 1 exactly

    // Exact-rational sandwich checks, asserted at the bracket endpoints
    // (stronger than the pointwise claims):
    bool sandwich_x_upper = false; // x_gap_hi <= |I_n|
    bool sandwich_x_lower = false; // |I_{n+1}(..., d2)| / (2a^2) <= x_gap_lo
    bool sandwich_y_upper = false; // y_gap_hi <= |I_{n+l}| (merged prefix)
    bool sandwich_y_lower = false; // |I_{n+l+1}(..., d2)| / (2a^2) <= y_gap_lo
    bool l_bound_ok = false;       // l^2 < n + 1
    bool tail_ratio_ok = false;    // (d2 - 1)/d2 > 1/(2a^2)

    bool sandwiches_ok() const {
        return sandwich_x_upper && sandwich_x_lower && sandwich_y_upper &&
               sandwich_y_lower;
    }
};

// Throws admissibility_error if a prefix leaves its windows or hits a
// pattern value; insufficient_depth_error if the prefixes do not share
// at least one digit, do not differ within the given depth, or are too
// shallow for a positive certified gap.
QLReport quasi_lipschitz_ratio(const DigitSeq& x1seq, const DigitSeq& x2seq,
                               const PatternSeq& pseq);

} // namespace engel

#pragma once

#include "engel/bigint.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace engel {

// One integer-valued function f with f(n) -> +infinity. Built-in kinds
// are strictly increasing on n >= 1, which lets threshold selection
// invert them directly instead of scanning.
class PatternFunction {
public:
    enum class Kind { Affine, Exponential, Monomial, Explicit };

    static PatternFunction affine(const BigInt& k, const BigInt& l);   // k*n + l, k >= 1, l >= 0
    static PatternFunction exponential(const BigInt& k);               // k^n, k >= 2
    static PatternFunction monomial(unsigned long p);                  // n^p, p >= 1
    // Caller-supplied closed form or table. monotone enables bisection
    // search; otherwise thresholds fall back to a linear scan.
    static PatternFunction explicit_fn(std::string label,
                                       std::function<BigInt(const BigInt&)> fn,
                                       bool monotone = false);

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    bool monotone() const { return monotone_; }

    BigInt eval(const BigInt& n) const;

    // Minimal t >= 1 with f(t) > bound, solved in closed form where the
    // kind allows it; nullopt for Explicit.
    std::optional<BigInt> min_arg_exceeding(const BigInt& bound) const;

    // Structural identity of the spec (not pointwise equality).
    bool same_spec(const PatternFunction& other) const;

private:
    Kind kind_;
    BigInt a_ = 0, b_ = 0; // affine k,l / exponential base / monomial power
    std::function<BigInt(const BigInt&)> fn_;
    std::string label_;
    bool monotone_ = false;
};

// A countable family F: either one of the built-in infinite generators
// or an explicit finite list. Parsed from the DSL
//   "affine" | "powers" | "list: <expr>; <expr>; ..."
// where <expr> is k*n+l (also n, 3*n, n+2), k^n, or n^p.
class FamilySpec {
public:
    enum class Generator { Affine, Powers, List };

    static FamilySpec affine_family();
    static FamilySpec powers_family();
    static FamilySpec list_family(std::vector<PatternFunction> fns);
    static FamilySpec parse(const std::string& dsl);

    Generator generator() const { return gen_; }
    bool finite() const { return gen_ == Generator::List; }
    std::size_t list_size() const { return list_.size(); }
    const std::string& dsl() const { return dsl_; }

    // i-th member, 1-based. The affine family walks the anti-diagonals
    // of (k, l): i=1 -> n, i=2 -> 2n, i=3 -> n+1, i=4 -> 3n, ...
    // The powers family maps i -> (i+1)^n.
    PatternFunction function(std::uint64_t i) const;

private:
    Generator gen_ = Generator::List;
    std::vector<PatternFunction> list_;
    std::string dsl_;
};

// F_j under the canonical binary enumeration of nonempty finite
// subsets: F_j = { f_i : bit (i-1) of j is set }, j >= 1.
// Throws range_error when j >= 2^N for a finite family of N functions.
std::vector<PatternFunction> finite_subset(const FamilySpec& spec, std::uint64_t j);

// n_k = #F_1 + ... + #F_k (n_0 = 0).
std::uint64_t subset_size_cumsum(const FamilySpec& spec, std::uint64_t k);

struct Thresholds {
    std::vector<BigInt> t;                        // t_1 ... t_K
    std::vector<std::vector<BigInt>> block_values; // {f(t_k)}, ascending per block
};

// Chooses each t_k minimal such that
//   (C2)  min_{f in F_k} f(t_k) > 2 a^{n_k^2},
//   (C1)  min_{f in F_k} f(t_k) > max_{f in F_{k-1}} f(t_{k-1}),
// and the block values {f(t_k)} are pairwise distinct. search_cap bounds
// the total number of function evaluations spent across the call;
// exceeding it raises search_cap_error (a family diverging too slowly
// for the cap, not a mathematical impossibility).
Thresholds select_thresholds(const FamilySpec& spec, unsigned long a,
                             std::uint64_t K, std::uint64_t search_cap = 10'000'000);

struct Provenance {
    BigInt value;
    std::uint64_t k;     // subset index
    std::string f;       // function label
    BigInt t;            // witness argument
};

// The pattern values {b_m}: sorted strictly increasing union of the
// block values, with provenance per value.
struct PatternSeq {
    unsigned long a = 5;
    std::uint64_t K = 0;
    std::vector<BigInt> thresholds;
    std::vector<BigInt> values;       // b_1 < b_2 < ...
    std::vector<Provenance> provenance;
};

PatternSeq build_b(const FamilySpec& spec, unsigned long a, std::uint64_t K,
                   std::uint64_t search_cap = 10'000'000);

struct BCountReport {
    std::vector<std::uint64_t> counts; // c(n) = #{m : b_m < 2 a^n}, n = 1..N
    bool ok = true;                    // c(n) < sqrt(n) for every n
    std::uint64_t first_fail = 0;      // 0 when ok
};

// Checks the counting inequality c(n) < sqrt(n) for n = 1..N via the
// exact integer test c(n)^2 < n. For finite K the verdict covers the
// realized values only.
BCountReport verify_b_count(const PatternSeq& pseq, std::uint64_t N);

} // namespace engel

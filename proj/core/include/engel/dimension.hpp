#pragma once

#include "engel/construction.hpp"

#include <cstdint>
#include <vector>

namespace engel {

// The cylinder measure on E_0: mass 1/#D_n for each admissible cylinder
// of order n. Sibling masses sum exactly to the parent mass because
// #D_n = #D_{n-1} * (a^n - c_n).
struct MeasureContext {
    E0Config cfg;
    DnTable dn; // to cfg.depth

    static MeasureContext make(const E0Config& cfg);
};

// 1/#D_n, exact. Throws admissibility_error unless every digit lies in
// its window and avoids the forbidden set.
Rational mu_cylinder(const MeasureContext& ctx, const DigitSeq& seq);

// The local-dimension quotient at a depth-(n+1) admissible sequence:
//   L_n = (log #D_n - log 4) / (sum_{k=1}^{n+1} log d_k + log(d_{n+1}-1)),
// the chain in which a ball of radius between |I_{n+1}| and |I_n| meets
// at most four admissible order-n cylinders. Accurate to 1e-12 relative.
double local_dim_quotient(const MeasureContext& ctx, const DigitSeq& seq);

// A_n = sum_{k=1}^{n} log(a^k - sqrt(k))
//       / (sum_{k=1}^{n+1} log(2a^k) + log(2a^{n+1})).
// Tends to 1; 0 <= A_n <= 1. Needs a >= 5, n >= 1.
double analytic_lower_bound(unsigned long a, std::uint64_t n);

// The same quotient with the numerator lowered by log 4; every L_n over
// a window-constrained sequence dominates it when the pattern counts
// obey c(n) < sqrt(n).
double dim_bound_chain(unsigned long a, std::uint64_t n);

// -log|I_n(seq)| relative to the model growth (1/2) n^2 log a, with the
// window envelopes (all-minimal digits a^k vs the crude bound (2a)^k)
// normalized the same way.
struct LengthRatio {
    double ratio = 0.0;
    double env_lo = 0.0; // (sum_k k log a) / ((1/2) n^2 log a) = (n+1)/n
    double env_hi = 0.0; // (sum_k k log 2a) / ((1/2) n^2 log a)
};

// Requires every digit in its window [a^k, 2a^k); the forbidden set does
// not enter. Throws admissibility_error on a window violation.
LengthRatio length_asymptotic_ratio(const DigitSeq& seq, unsigned long a);

struct DimRow {
    std::uint64_t n = 0;
    double L = 0.0;            // local_dim_quotient at the minimal allowed prefix
    double A = 0.0;            // analytic_lower_bound(a, n)
    double length_ratio = 0.0; // at the minimal allowed prefix
    double dn_margin = 0.0;    // log #D_n - sum_{k<=n} log(a^k - sqrt(k))
};

struct DimReport {
    unsigned long a = 0;
    std::vector<DimRow> rows;
};

// Rows n = 1..N evaluated along the minimal allowed digit sequence
// (rank-0 digit of every window), which maximizes L_n over window
// choices. Needs cfg.depth >= N+1.
DimReport dim_report(const MeasureContext& ctx, std::uint64_t N);

} // namespace engel

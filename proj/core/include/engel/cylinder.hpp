#pragma once

#include "engel/engel.hpp"

#include <optional>

namespace engel {

// Endpoints stay exact up to this depth; denominators of window-
// constrained sequences grow like a^(n^2/2), so deeper cylinders carry
// only their log-length.
inline constexpr std::size_t kExactDepthLimit = 64;

// The order-n cylinder I_n(d_1,...,d_n): a left-open right-closed
// interval with
//   left   = sum_{j<=n}   1/(d_1...d_j)
//   right  = sum_{j<=n-1} 1/(d_1...d_j) + 1/(d_1...d_{n-1}(d_n-1))
//   length = 1/(d_1...d_{n-1} d_n (d_n-1))
struct Cylinder {
    DigitSeq base;
    std::optional<Rational> left;
    std::optional<Rational> right;
    std::optional<Rational> length;
    double log_length = 0.0; // natural log, from exact integer factors

    bool exact() const { return left.has_value(); }

    // Membership in (left, right]; requires exact endpoints.
    bool contains(const Rational& x) const;
};

// Throws admissibility_error on an empty or inadmissible sequence.
Cylinder cylinder(const DigitSeq& seq);

} // namespace engel

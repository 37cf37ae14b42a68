#pragma once

#include "engel/bigint.hpp"

#include <string>

namespace engel {

// Parses "p/q", a plain integer, or a decimal string ("0.375" -> 3/8)
// into an exact reduced fraction. Digit extraction is discontinuous, so
// inputs are never routed through floating point.
Rational parse_rational(const std::string& text);

// Canonical "p/q" form, denominator always printed ("1" -> "1/1").
std::string rational_to_string(const Rational& x);

// True iff 0 < x <= 1 (the Engel domain).
bool in_unit_interval(const Rational& x);

// Throws std::domain_error unless 0 < x <= 1.
void require_unit_interval(const Rational& x);

} // namespace engel

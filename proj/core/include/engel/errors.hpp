#pragma once

#include <stdexcept>
#include <string>

namespace engel {

// Digit sequence violates d_1 >= 2 / nondecreasing (or strict) order.
class admissibility_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Index or level outside the defined range of a family / table.
class range_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Threshold search exhausted its evaluation budget.
class search_cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Source digits collide with pattern values; the source was not an
// E_0 sequence for this pattern sequence.
class disjointness_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested certified quantity cannot be pinned down at the supplied depth.
class insufficient_depth_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A digit window contains no allowed digit.
class empty_window_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace engel

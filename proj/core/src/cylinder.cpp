#include "engel/cylinder.hpp"

#include "engel/errors.hpp"
#include "engel/xlog.hpp"

#include <stdexcept>

namespace engel {

bool Cylinder::contains(const Rational& x) const {
    if (!exact())
        throw insufficient_depth_error("cylinder deeper than the exact-endpoint limit");
    return x > *left && x <= *right;
}

Cylinder cylinder(const DigitSeq& seq) {
    if (seq.empty()) throw admissibility_error("cylinder of empty sequence");
    const auto& d = seq.digits();
    const std::size_t n = d.size();

    Cylinder c;
    c.base = seq;

    // -log|I_n| = sum_{j<=n-1} log d_j + log d_n + log(d_n - 1)
    std::vector<BigInt> factors(d.begin(), d.end());
    factors.push_back(d.back() - 1);
    c.log_length = -log_sum(factors);

    if (n <= kExactDepthLimit) {
        BigInt prefix = 1; // d_1...d_{n-1}
        for (std::size_t j = 0; j + 1 < n; ++j) prefix *= d[j];

        Rational left = partial_sum(seq);

        Rational right(1, prefix * (d.back() - 1));
        right.canonicalize();
        if (n > 1) right += partial_sum(seq.prefix(n - 1));

        Rational len(1, prefix * d.back() * (d.back() - 1));
        len.canonicalize();

        c.left = left;
        c.right = right;
        c.length = len;
    }
    return c;
}

} // namespace engel

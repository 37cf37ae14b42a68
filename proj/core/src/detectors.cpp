#include "engel/detectors.hpp"

#include "engel/errors.hpp"

#include <algorithm>

namespace engel {

DigitSet::DigitSet(std::vector<BigInt> values) : v_(std::move(values)) {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    if (!v_.empty() && v_.front() < 1) {
        throw range_error("digit sets hold positive integers");
    }
}

DigitSet DigitSet::from_seq(const DigitSeq& seq) {
    return DigitSet(seq.digits());
}

bool DigitSet::contains(const BigInt& x) const {
    return std::binary_search(v_.begin(), v_.end(), x);
}

const BigInt& DigitSet::min() const {
    if (v_.empty()) throw range_error("empty digit set");
    return v_.front();
}

const BigInt& DigitSet::max() const {
    if (v_.empty()) throw range_error("empty digit set");
    return v_.back();
}

DensityProfile banach_density_profile(const DigitSet& A,
                                      const std::vector<std::uint64_t>& windows) {
    if (A.empty()) throw range_error("empty digit set");
    if (windows.empty()) throw range_error("no window lengths given");
    const auto& v = A.values();
    DensityProfile profile;
    for (std::uint64_t w : windows) {
        if (w < 1) throw range_error("window length must be >= 1");
        DensityEntry entry;
        entry.window = w;
        std::size_t j = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const BigInt end = v[i] + BigInt(static_cast<unsigned long>(w));
            if (j < i) j = i;
            while (j < v.size() && v[j] < end) ++j;
            const std::uint64_t count = j - i;
            if (count > entry.count) {
                entry.count = count;
                entry.start = v[i];
            }
        }
        entry.density = double(entry.count) / double(w);
        profile.entries.push_back(std::move(entry));
    }
    return profile;
}

ProgressionResult longest_ap(const DigitSet& A, const BigInt& d) {
    if (d < 1) throw range_error("difference must be >= 1");
    ProgressionResult best;
    best.step = d;
    for (const BigInt& t : A.values()) {
        if (t > d && A.contains(t - d)) continue; // not a chain start
        std::uint64_t len = 1;
        BigInt next = t + d;
        while (A.contains(next)) {
            ++len;
            next += d;
        }
        if (len > best.length) {
            best.length = len;
            best.start = t;
        }
    }
    return best;
}

ProgressionResult longest_gp(const DigitSet& A, const BigInt& q) {
    if (q < 2) throw range_error("ratio must be >= 2");
    ProgressionResult best;
    best.step = q;
    for (const BigInt& t : A.values()) {
        if (mpz_divisible_p(t.get_mpz_t(), q.get_mpz_t()) && A.contains(t / q)) {
            continue; // not a chain start
        }
        std::uint64_t len = 1;
        BigInt next = t * q;
        while (A.contains(next)) {
            ++len;
            next *= q;
        }
        if (len > best.length) {
            best.length = len;
            best.start = t;
        }
    }
    return best;
}

DetectResult find_translation(const DigitSet& A, const DigitSet& B) {
    if (B.empty()) throw range_error("empty query set");
    DetectResult res;
    if (A.empty()) return res;
    res.bound_searched = A.max();
    const BigInt& bmin = B.min();
    // Any witness n satisfies bmin + n in A, so n = anchor - bmin with
    // anchor ranging over A. Negative shifts are admissible; report the
    // witness of smallest magnitude and prefer the nonnegative one on ties.
    const auto embeds = [&](const BigInt& n) {
        for (const BigInt& x : B.values()) {
            if (!A.contains(x + n)) return false;
        }
        return true;
    };
    const auto& v = A.values();
    std::size_t lo = std::lower_bound(v.begin(), v.end(), bmin) - v.begin();
    for (std::size_t i = lo; i < v.size(); ++i) {
        const BigInt n = v[i] - bmin;
        if (embeds(n)) {
            res.found = true;
            res.witness = n;
            break;
        }
    }
    for (std::size_t i = lo; i-- > 0;) {
        const BigInt n = v[i] - bmin;
        if (res.found && res.witness <= -n) break; // nonneg candidate is closer
        if (embeds(n)) {
            res.found = true;
            res.witness = n;
            break;
        }
    }
    return res;
}

DetectResult find_scalar(const DigitSet& A, const DigitSet& B) {
    if (B.empty()) throw range_error("empty query set");
    DetectResult res;
    if (A.empty()) return res;
    const BigInt& bmin = B.min();
    res.bound_searched = A.max() / bmin;
    for (const BigInt& anchor : A.values()) {
        if (anchor < bmin ||
            !mpz_divisible_p(anchor.get_mpz_t(), bmin.get_mpz_t())) {
            continue;
        }
        const BigInt n = anchor / bmin;
        bool all = true;
        for (const BigInt& x : B.values()) {
            if (!A.contains(x * n)) {
                all = false;
                break;
            }
        }
        if (all) {
            res.found = true;
            res.witness = n;
            return res;
        }
    }
    return res;
}

DetectResult find_power(const DigitSet& A, const DigitSet& B) {
    if (B.empty()) throw range_error("empty query set");
    if (B.min() < 2) throw range_error("power bases must be >= 2");
    DetectResult res;
    if (A.empty()) return res;
    const BigInt& maxA = A.max();
    std::vector<BigInt> cur(B.values());
    for (BigInt n = 1;; n += 1) {
        if (cur.front() > maxA) {
            res.bound_searched = n - 1;
            return res;
        }
        bool all = true;
        for (const BigInt& x : cur) {
            if (!A.contains(x)) {
                all = false;
                break;
            }
        }
        if (all) {
            res.found = true;
            res.witness = n;
            res.bound_searched = n;
            return res;
        }
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] *= B.values()[i];
    }
}

} // namespace engel

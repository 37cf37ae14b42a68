#include "engel/family.hpp"

#include "engel/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace engel {

namespace {

unsigned long to_ulong_exponent(const BigInt& n, const char* what) {
    if (n < 0 || !n.fits_ulong_p()) {
        throw range_error(std::string(what) + ": argument does not fit an exponent");
    }
    return n.get_ui();
}

std::string affine_label(const BigInt& k, const BigInt& l) {
    std::string s = (k == 1) ? "n" : to_decimal(k) + "*n";
    if (l > 0) s += "+" + to_decimal(l);
    return s;
}

} // namespace

PatternFunction PatternFunction::affine(const BigInt& k, const BigInt& l) {
    if (k < 1 || l < 0) throw parse_error("affine pattern needs k >= 1, l >= 0");
    PatternFunction f;
    f.kind_ = Kind::Affine;
    f.a_ = k;
    f.b_ = l;
    f.label_ = affine_label(k, l);
    f.monotone_ = true;
    return f;
}

PatternFunction PatternFunction::exponential(const BigInt& k) {
    if (k < 2) throw parse_error("exponential pattern needs base >= 2");
    PatternFunction f;
    f.kind_ = Kind::Exponential;
    f.a_ = k;
    f.label_ = to_decimal(k) + "^n";
    f.monotone_ = true;
    return f;
}

PatternFunction PatternFunction::monomial(unsigned long p) {
    if (p < 1) throw parse_error("monomial pattern needs power >= 1");
    PatternFunction f;
    f.kind_ = Kind::Monomial;
    f.b_ = BigInt(p);
    f.label_ = "n^" + std::to_string(p);
    f.monotone_ = true;
    return f;
}

PatternFunction PatternFunction::explicit_fn(std::string label,
                                             std::function<BigInt(const BigInt&)> fn,
                                             bool monotone) {
    if (!fn) throw std::invalid_argument("explicit pattern needs a callable");
    PatternFunction f;
    f.kind_ = Kind::Explicit;
    f.fn_ = std::move(fn);
    f.label_ = std::move(label);
    f.monotone_ = monotone;
    return f;
}

BigInt PatternFunction::eval(const BigInt& n) const {
    switch (kind_) {
    case Kind::Affine:
        return a_ * n + b_;
    case Kind::Exponential: {
        unsigned long e = to_ulong_exponent(n, "exponential eval");
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), a_.get_mpz_t(), e);
        return r;
    }
    case Kind::Monomial: {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), b_.get_ui());
        return r;
    }
    case Kind::Explicit:
        return fn_(n);
    }
    throw std::logic_error("unreachable pattern kind");
}

std::optional<BigInt> PatternFunction::min_arg_exceeding(const BigInt& bound) const {
    switch (kind_) {
    case Kind::Affine: {
        // k*t + l > bound  <=>  t >= floor((bound - l)/k) + 1
        BigInt t;
        BigInt num = bound - b_;
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), a_.get_mpz_t());
        t += 1;
        return std::max(t, BigInt(1));
    }
    case Kind::Exponential: {
        if (bound < a_) return BigInt(1);
        // Doubling bracket, then bisection; each probe is one pow.
        unsigned long lo = 1, hi = 2;
        auto pw = [&](unsigned long e) { return pow_ui(a_, e); };
        while (pw(hi) <= bound) {
            lo = hi + 1;
            hi *= 2;
        }
        while (lo < hi) {
            unsigned long mid = lo + (hi - lo) / 2;
            if (pw(mid) > bound) hi = mid;
            else lo = mid + 1;
        }
        return BigInt(lo);
    }
    case Kind::Monomial: {
        if (bound < 1) return BigInt(1);
        BigInt t = iroot(bound, b_.get_ui()) + 1; // (r+1)^p > bound >= r^p
        return std::max(t, BigInt(1));
    }
    case Kind::Explicit:
        return std::nullopt;
    }
    throw std::logic_error("unreachable pattern kind");
}

bool PatternFunction::same_spec(const PatternFunction& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Explicit) return label_ == other.label_;
    return a_ == other.a_ && b_ == other.b_;
}

// ---------------------------------------------------------------------------

namespace {

// DSL atom, spaces already stripped: k*n+l (the '*' optional), k^n, n^p.
PatternFunction parse_atom(const std::string& s) {
    if (s.empty()) throw parse_error("empty pattern expression");
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        std::string left = s.substr(0, caret);
        std::string right = s.substr(caret + 1);
        auto all_digits = [](const std::string& t) {
            return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
                return std::isdigit(c) != 0;
            });
        };
        if (left == "n" && all_digits(right)) {
            return PatternFunction::monomial(std::stoul(right));
        }
        if (all_digits(left) && right == "n") {
            return PatternFunction::exponential(from_decimal(left));
        }
        throw parse_error("bad pattern expression: " + s);
    }
    std::size_t pos = 0;
    BigInt k = 1;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        k = from_decimal(s.substr(start, pos - start));
        if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos >= s.size() || s[pos] != 'n') {
        throw parse_error("bad pattern expression: " + s);
    }
    ++pos;
    BigInt l = 0;
    if (pos < s.size()) {
        if (s[pos] != '+') throw parse_error("bad pattern expression: " + s);
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos || pos != s.size()) {
            throw parse_error("bad pattern expression: " + s);
        }
        l = from_decimal(s.substr(start, pos - start));
    }
    return PatternFunction::affine(k, l);
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_all_spaces(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c) != 0; }),
            s.end());
    return s;
}

} // namespace

FamilySpec FamilySpec::affine_family() {
    FamilySpec s;
    s.gen_ = Generator::Affine;
    s.dsl_ = "affine";
    return s;
}

FamilySpec FamilySpec::powers_family() {
    FamilySpec s;
    s.gen_ = Generator::Powers;
    s.dsl_ = "powers";
    return s;
}

FamilySpec FamilySpec::list_family(std::vector<PatternFunction> fns) {
    if (fns.empty()) throw parse_error("list family needs at least one function");
    FamilySpec s;
    s.gen_ = Generator::List;
    s.list_ = std::move(fns);
    std::string dsl = "list:";
    for (std::size_t i = 0; i < s.list_.size(); ++i) {
        dsl += (i == 0 ? " " : "; ") + s.list_[i].label();
    }
    s.dsl_ = dsl;
    return s;
}

FamilySpec FamilySpec::parse(const std::string& dsl) {
    std::string t = strip(dsl);
    if (t == "affine") return affine_family();
    if (t == "powers") return powers_family();
    if (t.rfind("list:", 0) == 0) {
        std::vector<PatternFunction> fns;
        std::stringstream ss(t.substr(5));
        std::string item;
        while (std::getline(ss, item, ';')) {
            std::string atom = strip_all_spaces(item);
            if (atom.empty()) continue;
            fns.push_back(parse_atom(atom));
        }
        if (fns.empty()) throw parse_error("list family needs at least one function");
        return list_family(std::move(fns));
    }
    throw parse_error("unknown family spec: " + t);
}

PatternFunction FamilySpec::function(std::uint64_t i) const {
    if (i == 0) throw range_error("family index is 1-based");
    switch (gen_) {
    case Generator::Affine: {
        // Anti-diagonal walk over (k, l), k >= 1, l >= 0: diagonal s holds
        // the s+1 pairs with k+l = s+1, ordered by decreasing k.
        std::uint64_t s = 0;
        while ((s + 1) * (s + 2) / 2 < i) ++s;
        std::uint64_t o = i - s * (s + 1) / 2 - 1;
        return PatternFunction::affine(BigInt(s - o + 1), BigInt(o));
    }
    case Generator::Powers:
        return PatternFunction::exponential(BigInt(i + 1));
    case Generator::List:
        if (i > list_.size()) {
            throw range_error("family index " + std::to_string(i) + " exceeds list size " +
                              std::to_string(list_.size()));
        }
        return list_[i - 1];
    }
    throw std::logic_error("unreachable family generator");
}

std::vector<PatternFunction> finite_subset(const FamilySpec& spec, std::uint64_t j) {
    if (j == 0) throw range_error("subset index is 1-based");
    if (spec.finite() && spec.list_size() < 64 &&
        j >= (std::uint64_t{1} << spec.list_size())) {
        throw range_error("subset index " + std::to_string(j) +
                          " out of range for a family of " +
                          std::to_string(spec.list_size()) + " functions");
    }
    std::vector<PatternFunction> out;
    for (unsigned b = 0; b < 64; ++b) {
        if (j >> b & 1) out.push_back(spec.function(std::uint64_t{b} + 1));
    }
    return out;
}

std::uint64_t subset_size_cumsum(const FamilySpec& spec, std::uint64_t k) {
    if (spec.finite() && k > 0 && spec.list_size() < 64 &&
        k >= (std::uint64_t{1} << spec.list_size())) {
        throw range_error("subset index out of range");
    }
    std::uint64_t n = 0;
    for (std::uint64_t j = 1; j <= k; ++j) n += std::uint64_t(std::popcount(j));
    return n;
}

namespace {

struct EvalBudget {
    std::uint64_t left;
    void charge(std::uint64_t k, std::uint64_t amount = 1) {
        if (left < amount) {
            throw search_cap_error("search cap exhausted while selecting threshold t_" +
                                   std::to_string(k));
        }
        left -= amount;
    }
};

// Minimal t >= 1 with f(t) > bound for a monotone function without a
// closed-form inverse.
BigInt bisect_min_arg(const PatternFunction& f, const BigInt& bound,
                      EvalBudget& budget, std::uint64_t k) {
    BigInt lo = 1, hi = 1;
    budget.charge(k);
    while (f.eval(hi) <= bound) {
        lo = hi + 1;
        hi *= 2;
        budget.charge(k);
    }
    while (lo < hi) {
        BigInt mid = lo + (hi - lo) / 2;
        budget.charge(k);
        if (f.eval(mid) > bound) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

bool pairwise_distinct(std::vector<BigInt> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

} // namespace

Thresholds select_thresholds(const FamilySpec& spec, unsigned long a,
                             std::uint64_t K, std::uint64_t search_cap) {
    if (a < 2) throw range_error("threshold selection needs a >= 2");
    if (K == 0) return {};
    EvalBudget budget{search_cap};
    Thresholds out;
    BigInt prev_max = 0;
    std::uint64_t n_k = 0;
    for (std::uint64_t k = 1; k <= K; ++k) {
        auto fs = finite_subset(spec, k);
        n_k += std::uint64_t(std::popcount(k));
        BigInt bound = 2 * pow_ui(a, n_k * n_k);
        if (k > 1 && prev_max > bound) bound = prev_max;

        bool scan_from_one = std::any_of(fs.begin(), fs.end(), [](const PatternFunction& f) {
            return !f.monotone();
        });
        BigInt t = 1;
        if (!scan_from_one) {
            for (const auto& f : fs) {
                if (auto m = f.min_arg_exceeding(bound)) {
                    if (*m > t) t = *m;
                } else {
                    BigInt b2 = bisect_min_arg(f, bound, budget, k);
                    if (b2 > t) t = b2;
                }
            }
        }

        for (;;) {
            std::vector<BigInt> vals;
            vals.reserve(fs.size());
            bool above = true;
            for (const auto& f : fs) {
                budget.charge(k);
                vals.push_back(f.eval(t));
                if (vals.back() <= bound) above = false;
            }
            if (above && pairwise_distinct(vals)) {
                std::sort(vals.begin(), vals.end());
                prev_max = vals.back();
                out.t.push_back(t);
                out.block_values.push_back(std::move(vals));
                break;
            }
            t += 1;
        }
    }
    return out;
}

PatternSeq build_b(const FamilySpec& spec, unsigned long a, std::uint64_t K,
                   std::uint64_t search_cap) {
    Thresholds th = select_thresholds(spec, a, K, search_cap);
    PatternSeq seq;
    seq.a = a;
    seq.K = K;
    seq.thresholds = th.t;
    for (std::uint64_t k = 1; k <= K; ++k) {
        auto fs = finite_subset(spec, k);
        std::vector<Provenance> block;
        block.reserve(fs.size());
        for (const auto& f : fs) {
            block.push_back(Provenance{f.eval(th.t[k - 1]), k, f.label(), th.t[k - 1]});
        }
        std::sort(block.begin(), block.end(),
                  [](const Provenance& x, const Provenance& y) { return x.value < y.value; });
        for (auto& p : block) {
            if (!seq.values.empty() && p.value <= seq.values.back()) {
                throw std::logic_error("pattern blocks interleave; threshold selection is broken");
            }
            seq.values.push_back(p.value);
            seq.provenance.push_back(std::move(p));
        }
    }
    return seq;
}

BCountReport verify_b_count(const PatternSeq& pseq, std::uint64_t N) {
    BCountReport rep;
    rep.counts.reserve(N);
    BigInt limit = 2 * BigInt(pseq.a); // 2 a^n, updated incrementally
    for (std::uint64_t n = 1; n <= N; ++n) {
        auto it = std::lower_bound(pseq.values.begin(), pseq.values.end(), limit);
        auto c = std::uint64_t(it - pseq.values.begin());
        rep.counts.push_back(c);
        // Exact form of c(n) < sqrt(n).
        if (rep.ok && !(c * c < n)) {
            rep.ok = false;
            rep.first_fail = n;
        }
        limit *= pseq.a;
    }
    return rep;
}

} // namespace engel

#include "engel/rational.hpp"

#include "engel/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace engel {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty rational literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }

    Rational r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw parse_error("malformed rational literal: " + text);
        BigInt den = from_decimal(q);
        if (den == 0) throw parse_error("zero denominator: " + text);
        r = Rational(from_decimal(p), den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw parse_error("malformed decimal literal: " + text);
        BigInt num = from_decimal(ip + fp);
        BigInt den = pow_ui(10ul, static_cast<unsigned long>(fp.size()));
        r = Rational(num, den);
    } else {
        if (!all_digits(s)) throw parse_error("malformed integer literal: " + text);
        r = Rational(from_decimal(s));
    }
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

std::string rational_to_string(const Rational& x) {
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

bool in_unit_interval(const Rational& x) { return x > 0 && x <= 1; }

void require_unit_interval(const Rational& x) {
    if (!in_unit_interval(x))
        throw std::domain_error("value " + rational_to_string(x) +
                                " outside the Engel domain (0,1]");
}

} // namespace engel

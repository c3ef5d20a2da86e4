#include "crlab/rational.hpp"

#include "crlab/errors.hpp"

namespace crlab {

namespace {

bool parse_int(std::string_view text, Int& out) {
    if (text.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (text[0] == '-' || text[0] == '+') {
        neg = (text[0] == '-');
        i = 1;
    }
    if (i == text.size()) return false;
    Int v = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') return false;
        v *= 10;
        v += (c - '0');
    }
    out = neg ? Int(-v) : v;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    Int num, den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_int(text, num))
            throw DomainError("malformed rational: '" + std::string(text) + "'");
    } else {
        if (!parse_int(text.substr(0, slash), num) ||
            !parse_int(text.substr(slash + 1), den))
            throw DomainError("malformed rational: '" + std::string(text) + "'");
        if (den == 0)
            throw DomainError("zero denominator in rational: '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string rational_str(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_pow(const Rational& q, std::uint64_t e) {
    Rational acc = 1;
    Rational base = q;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Rational pow2(std::uint64_t m) {
    Int one = 1;
    return Rational(one << static_cast<unsigned>(m), 1);
}

Int floor_int(const Rational& q) {
    Int n = numerator(q);
    Int d = denominator(q);
    Int quot = n / d;            // truncates toward zero
    if (n < 0 && quot * d != n) --quot;
    return quot;
}

} // namespace crlab

#pragma once

#include "crlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace crlab {

// All arithmetic in the library is exact.  Rationals are arbitrary-precision
// and always kept in lowest terms with a positive denominator; both
// invariants are maintained by the backing type.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_positive(const Rational& q) { return q > 0; }

// Parses "p/q" or a bare integer "p".  Whitespace is not accepted; the
// denominator must be positive after sign normalisation.  Throws DomainError
// on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form "p/q" in lowest terms, denominator always written
// (so "1/2", "3/1", "-1/4").  parse_rational(rational_str(q)) == q.
std::string rational_str(const Rational& q);

// q^e for a natural exponent (e == 0 gives 1).
Rational rational_pow(const Rational& q, std::uint64_t e);

// 2^m as a Rational, m a natural number.
Rational pow2(std::uint64_t m);

// Largest integer <= q.
Int floor_int(const Rational& q);

} // namespace crlab

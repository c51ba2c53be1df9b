#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace czk {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator (GMP canonical form).
using Rational = mpq_class;

// Parses "num/den", "num" or "-num/den". Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Always "num/den", including integers ("3/1") so serialized text is uniform.
std::string to_string(const Rational& q);

// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational from_double(double x);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q);

// q^e for a nonnegative integer exponent.
Rational pow(const Rational& q, unsigned e);

}  // namespace czk

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace specfold {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest integer <= q.
Integer rational_floor(const Rational& q);

/// Smallest integer >= q.
Integer rational_ceil(const Rational& q);

/// base^exp with exact arithmetic; exp may be negative (throws ZeroFactor
/// when base == 0 and exp < 0).
Rational rational_pow(const Rational& base, long exp);

double to_double(const Rational& q);

/// Narrowing conversion that refuses to lose bits.
long long to_longlong_checked(const Integer& n);

/// Accepts "p", "-p", "p/q" with optional sign on the numerator.
/// Throws ParseError on anything else (including q == 0).
Rational parse_rational(std::string_view text);

/// Canonical rendering: integers without denominator, otherwise "p/q"
/// in lowest terms with the sign on the numerator.
std::string format_rational(const Rational& q);

}  // namespace specfold

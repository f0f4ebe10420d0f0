#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace skelpot {

// Exact rationals. mpq_class keeps values canonical (den > 0, gcd = 1)
// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q", "p", "-p/q". A leading '+' is rejected so that every accepted
// string has exactly one canonical spelling on output.
Rational parse_rational(std::string_view text);

// Parses a finite decimal such as "-0.5000001" or "1.25e-3" exactly.
Rational parse_decimal(std::string_view text);

// parse_decimal for text with '.', 'e' or 'E', parse_rational otherwise.
Rational parse_number(std::string_view text);

// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Exact value of a finite double.
Rational from_double(double x);

// Closest rational to `x` whose denominator does not exceed `max_den`.
// Ties resolve toward the smaller denominator.
Rational best_rational(const Rational& x, const Integer& max_den);

// Largest multiple of 1/den strictly below `x`, and smallest strictly above.
Rational grid_below(const Rational& x, const Integer& den);
Rational grid_above(const Rational& x, const Integer& den);

inline int sign(const Rational& q) { return sgn(q); }

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace skelpot

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace specm {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

/// DSL rendering: "3", "-1/2".
std::string to_string(const Rational& q);
/// Report rendering with an explicit denominator: "3/1", "-1/2".
std::string to_pq_string(const Rational& q);

/// Accepts "p", "-p", "p/q", and decimal literals such as "0.25".
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational abs_of(const Rational& q);
int sign_of(const Rational& q);
double to_double(const Rational& q);

}  // namespace specm

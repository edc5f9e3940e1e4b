#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace modgl2 {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den" form, always with an explicit denominator ("3/1" for integers).
std::string to_fraction_string(const Rational& x);

// Accepts "a/b", "a" and optional leading sign. Throws ValidationError.
Rational parse_rational(std::string_view text);

Rational abs(const Rational& x);

// Canonical num/den.
Rational fraction(long num, long den);

Rational from_int64(std::int64_t x);

// Decimal approximation for human-readable output.
double to_double(const Rational& x);

} // namespace modgl2

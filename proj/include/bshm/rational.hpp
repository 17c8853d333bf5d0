#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bshm {

/// Exact arbitrary-precision rational. Every size, capacity, rate and time
/// in the library is one of these; nothing is ever rounded to floating point
/// except for display.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or an exact decimal literal such as "-12.375".
/// Throws ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical reduced form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

Integer floor_integer(const Rational& value);
Integer ceil_integer(const Rational& value);
inline Rational floor(const Rational& value) { return Rational(floor_integer(value)); }
inline Rational ceil(const Rational& value) { return Rational(ceil_integer(value)); }

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

/// True iff value == 8^n for some integer n (n may be negative).
bool is_power_of_eight(const Rational& value);

/// The unique r = 8^n with r/8 < value <= r. Requires value > 0.
Rational round_up_to_power_of_eight(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace bshm

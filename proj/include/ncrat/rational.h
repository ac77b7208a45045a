#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncrat {

/// Exact scalar: reduced fraction with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Accepts "7", "-3/8", "2.5" and "1e-3"-free decimals. Throws Error(kParse).
Rational parse_rational(std::string_view text);

/// Builds num/den from decimal strings; den must be nonzero.
Rational make_rational(std::string_view num, std::string_view den);

std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);

/// "a/b", or "a" when the denominator is 1.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

/// Exact binary value of a finite double.
Rational from_double(double x);

/// The rational with the smallest denominator in the closed interval
/// [lo, hi] (continued-fraction descent of the Stern-Brocot tree).
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

}  // namespace ncrat

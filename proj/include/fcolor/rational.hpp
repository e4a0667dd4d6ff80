#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fcolor {

using Rational = mpq_class;

/// Parses "3", "-1/10", "0.125" or "1e-2" into an exact rational.
/// Throws InvalidInput on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact 2^-k.
Rational pow2_neg(unsigned k);

}  // namespace fcolor

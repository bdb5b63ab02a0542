#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fairdiv {

// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

// Accepts "7", "-3", "2/3", "-10/4" (normalized). Throws InputError on anything else.
Rational parse_rational(std::string_view text);

// "7" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

}  // namespace fairdiv

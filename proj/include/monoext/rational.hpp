#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace monoext {

/// Exact rational scalar used for scale values and discrete objectives.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// Always "p/q" (denominator included even when it is 1).
std::string to_fraction_string(const Rational& value);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

}  // namespace monoext

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qastab::exact {

/// Arbitrary-precision rational; always kept canonical (den > 0, reduced).
using Rational = mpq_class;

/// "3", "-7/28", "0.25" (finite decimals are converted exactly).
Rational parse_rational(std::string_view s);
/// Comma-separated list of parse_rational terms.
std::vector<Rational> parse_rational_list(std::string_view s);

std::string to_string(const Rational& r);
double to_double(const Rational& r);
/// Exact value of a finite double.
Rational from_double(double v);

}  // namespace qastab::exact

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace homsym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int factorial(int n);
Int binomial(int n, int k);
Int pow10(int k);

// "3", "-7", "0.5478" (exact: 5478/10^4), "5478/10000".
Rational parse_rational(const std::string& text);

// "5", "-3/4"
std::string rational_to_string(const Rational& r);

// Normalized scientific form with a fixed number of significant digits,
// e.g. 4.7013559613025792e-06. Rounding is half-to-even on the exact value,
// so the output is a pure function of the rational input.
std::string to_scientific(const Rational& r, int significant_digits = 17);

// Nearest double, ties to even. Exact for every binade we touch; values
// outside double range clamp to +-inf.
double to_double(const Rational& r);

}  // namespace homsym

#include <cmath>

#include "doctest.h"
#include "homsym/errors.hpp"
#include "homsym/rational.hpp"

using namespace homsym;

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.5478") == Rational(5478, 10000));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("10.125") == Rational(81, 8));
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("-5478/10000") == Rational(-2739, 5000));
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZeroError);
}

TEST_CASE("counting helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(pow10(3) == 1000);
}

TEST_CASE("scientific rendering is exact and deterministic") {
  CHECK(to_scientific(Rational(0)) == "0.0000000000000000e+00");
  CHECK(to_scientific(Rational(1)) == "1.0000000000000000e+00");
  CHECK(to_scientific(Rational(1, 3)) == "3.3333333333333333e-01");
  CHECK(to_scientific(Rational(2, 3)) == "6.6666666666666667e-01");
  CHECK(to_scientific(Rational(1, 1024)) == "9.7656250000000000e-04");
  CHECK(to_scientific(Rational(-123456789)) == "-1.2345678900000000e+08");

  // Ties round to even.
  CHECK(to_scientific(Rational(125, 100), 2) == "1.2e+00");
  CHECK(to_scientific(Rational(135, 100), 2) == "1.4e+00");
  // Carry across the first digit.
  CHECK(to_scientific(Rational(999999, 100000), 3) == "1.00e+01");
}

TEST_CASE("nearest-double conversion") {
  CHECK(to_double(Rational(0)) == 0.0);
  CHECK(to_double(Rational(3, 4)) == 0.75);
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Rational(2, 3)) == 2.0 / 3.0);
  CHECK(to_double(Rational(1, 10)) == 0.1);
  CHECK(to_double(Rational(-22, 7)) == -22.0 / 7.0);
  CHECK(to_double(Rational(Int("100000000000000000000"))) == 1e20);

  Int two53 = Int(1) << 53;
  // Exactly halfway between 1.0 and the next double: ties to even picks 1.0.
  CHECK(to_double(Rational(two53 + 1, two53)) == 1.0);
  // Halfway between 1+2^-52 and 1+2^-51: even mantissa wins.
  CHECK(to_double(Rational(two53 + 3, two53)) == 1.0 + std::ldexp(1.0, -51));
}

#include <random>

#include "doctest.h"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"

using namespace homsym;

TEST_CASE("polynomial identities cancel") {
  Expr u1 = ucoeff(1), u2 = ucoeff(2);
  Expr e = Expr::pow(u1 + u2, 2) - Expr::pow(u1, 2) - Expr::integer(2) * u1 * u2 - Expr::pow(u2, 2);
  CHECK(is_zero(e));
  CHECK(normalize(e).atoms().empty());
  CHECK(normalize(e).str() == "0");
}

TEST_CASE("fractions reduce") {
  Expr x = var_x(), t = var_t();
  CHECK(equal_mod_normal(Expr::integer(1) / (x + Expr::integer(1)) + x / (x + Expr::integer(1)),
                         Expr::integer(1)));
  CHECK(equal_mod_normal((Expr::pow(x, 2) - Expr::pow(t, 2)) / (x - t), x + t));
  Expr lhs = Expr::integer(1) / x + Expr::integer(1) / t;
  CHECK(equal_mod_normal(lhs, (x + t) / (x * t)));

  Expr big = Expr::pow(x + t, 3) * (x - t) / Expr::pow(x + t, 2);
  CHECK(equal_mod_normal(big, (x + t) * (x - t)));
}

TEST_CASE("identically zero denominators are rejected") {
  Expr u0 = ucoeff(0);
  CHECK_THROWS_AS(normalize(Expr::integer(1) / (u0 - u0 + Expr())), DivisionByZeroError);
  Expr x = var_x(), t = var_t();
  Expr zero = Expr::pow(x + t, 2) - Expr::pow(x, 2) - Expr::integer(2) * x * t - Expr::pow(t, 2);
  CHECK_THROWS_AS(normalize(Expr::pow(zero, -1)), DivisionByZeroError);
}

TEST_CASE("normal form is canonical across construction orders") {
  Expr x = var_x(), t = var_t(), u1 = ucoeff(1);
  Expr a = (x + t) * (u1 + Expr::integer(2)) / (x * t);
  Expr b = (Expr::integer(2) + u1) * (t + x) / (t * x);
  CHECK(normalize(a).equals(normalize(b)));
  CHECK(normalize(a).str() == normalize(b).str());
}

TEST_CASE("idempotence through to_expression") {
  const char* samples[] = {
      "(u1+u2)^2/(u0*(a*t-x))",
      "F'(u0)*u0_x^2 + F(u0)*u0_xx",
      "1/u0^2 - u1/(u0^3)",
      "x^2/(6*t) - 30*eps^2*t/x^6",
  };
  for (const char* s : samples) {
    NormalForm nf = normalize(parse_expression(s));
    NormalForm round = normalize(nf.to_expression());
    CHECK(nf.equals(round));
    // The printed form reads back to the same value, too.
    CHECK(normalize(parse_expression(nf.str())).equals(nf));
  }
}

TEST_CASE("unused atoms drop out after cancellation") {
  Expr x = var_x(), u1 = ucoeff(1);
  Expr e = x + u1 - u1;
  NormalForm nf = normalize(e);
  REQUIRE(nf.atoms().size() == 1);
  CHECK(nf.atoms()[0].kind == AtomKind::Indep);
}

TEST_CASE("function atoms are ring variables") {
  Expr f = func_apply("F", 0, ucoeff(0));
  Expr fp = func_apply("F", 1, ucoeff(0));
  CHECK(is_zero(f * fp - fp * f));
  CHECK(!is_zero(f - fp));
  // Arguments distinguish atoms.
  Expr g = func_apply("F", 0, ucoeff(1));
  CHECK(!is_zero(f - g));
}

namespace {

Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 4 : 7);
  switch (pick(rng)) {
    case 0:
      return var_x();
    case 1:
      return var_t();
    case 2:
      return ucoeff(std::uniform_int_distribution<int>(0, 1)(rng));
    case 3:
      return param("theta");
    case 4:
      return Expr::integer(std::uniform_int_distribution<int>(-3, 3)(rng));
    case 5:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 6:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    default:
      return Expr::pow(random_expr(rng, depth - 1), 2);
  }
}

}  // namespace

TEST_CASE("subtract soundness on random expressions") {
  std::mt19937 rng(20260816);
  int nontrivial = 0;
  for (int i = 0; i < 40; ++i) {
    Expr a = random_expr(rng, 3);
    // A rewritten twin must compare equal; a shifted one must not.
    Expr twin = (a * (var_x() + var_t())) / (var_x() + var_t());
    Expr shifted = a + Expr::integer(1);
    CHECK(is_zero(a - twin));
    CHECK(!is_zero(a - shifted));
    CHECK(normalize(a).equals(normalize(twin)));
    CHECK(!normalize(a).equals(normalize(shifted)));
    if (!normalize(a).is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 20);
}

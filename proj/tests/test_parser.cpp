#include "doctest.h"
#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"

using namespace homsym;

TEST_CASE("atoms and literals") {
  CHECK(parse_expression("0").is_zero_constant());
  CHECK(parse_expression("0.5478").value() == Rational(5478, 10000));
  CHECK(parse_expression("42").value() == Rational(42));

  Expr e = parse_expression("u3_xx");
  CHECK(e.atom().kind == AtomKind::Coeff);
  CHECK(e.atom().order == 3);
  CHECK(e.atom().deriv[0] == 2);

  CHECK(parse_expression("tu1").atom().family == CoeffFamily::Tilde);
  CHECK(parse_expression("hu2_xt").atom().family == CoeffFamily::Hat);
  CHECK(parse_expression("u").atom().kind == AtomKind::Dep);
  CHECK(parse_expression("u_xxt").atom().deriv[1] == 1);
  CHECK(parse_expression("theta").atom().kind == AtomKind::Param);
}

TEST_CASE("derivative operators apply eagerly") {
  Expr e = parse_expression("d(u,x,4)");
  CHECK(e.atom().kind == AtomKind::Dep);
  CHECK(e.atom().deriv[0] == 4);

  CHECK(structural_equal(parse_expression("dx(u)"), dep_u(1, 0)));
  CHECK(structural_equal(parse_expression("dt(u)"), dep_u(0, 1)));
  CHECK(parse_expression("d(eps,x)").is_zero_constant());
}

TEST_CASE("grammar shapes") {
  // 3/4*x parses as (3/4)*x under left-associative division.
  CHECK(equal_mod_normal(parse_expression("3/4*x"), rat(3, 4) * var_x()));
  CHECK(equal_mod_normal(parse_expression("a/b/c", SymbolTable{{"a", "b", "c"}, {}, "u"}),
                         param("a") / (param("b") * param("c"))));
  CHECK(equal_mod_normal(parse_expression("-x^2"), -Expr::pow(var_x(), 2)));
  CHECK(equal_mod_normal(parse_expression("2^3"), Expr::integer(8)));
  Expr ch = parse_expression("dt(u) + dx(F(u)*dx(u))");
  Expr manual = diff_total(dep_u(), 1) +
                diff_total(func_apply("F", 0, dep_u()) * diff_total(dep_u(), 0), 0);
  CHECK(structural_equal(ch, manual));
}

TEST_CASE("function applications") {
  Expr e = parse_expression("F''(u0)*u1^2");
  CHECK(!normalize(e).is_zero());
  CHECK(equal_mod_normal(e, Expr::pow(ucoeff(1), 2) * func_apply("F", 2, ucoeff(0))));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expression("u1 +"), ParseError);
  CHECK_THROWS_AS(parse_expression("(x"), ParseError);
  CHECK_THROWS_AS(parse_expression("d(u,eps)"), ParseError);
  CHECK_THROWS_AS(parse_expression("d(u,F)"), ParseError);
  CHECK_THROWS_AS(parse_expression("v + 1"), ParseError);
  CHECK_THROWS_AS(parse_expression("F + 1"), ParseError);
  CHECK_THROWS_AS(parse_expression("x^t"), ParseError);
  CHECK_THROWS_AS(parse_expression("x^1.5"), ParseError);
  CHECK_THROWS_AS(parse_expression("1/0"), ParseError);

  try {
    parse_expression("x +\n  )");
    CHECK(false);
  } catch (const ParseError& pe) {
    CHECK(pe.line == 2);
  }
}

TEST_CASE("printed forms read back") {
  const char* samples[] = {
      "dt(u) + dx(F(u)*dx(u))",
      "-3/(a^2*(a*t-x)^4)",
      "F''(u0)*u1^2 + 2*F(u0)*u2",
      "tu1_x + hu2",
      "x^2/(6*t) + eps/x^2",
      "(1-theta)*eps*q^2",
  };
  for (const char* s : samples) {
    Expr e = parse_expression(s);
    Expr back = parse_expression(e.str());
    CHECK(equal_mod_normal(e, back));
  }
}

TEST_CASE("series atoms can be disabled") {
  SymbolTable t;
  t.allow_series = false;
  CHECK_THROWS_AS(parse_expression("u1", t), ParseError);
  CHECK_NOTHROW(parse_expression("u_x", t));
}

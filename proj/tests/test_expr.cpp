#include "doctest.h"
#include "homsym/errors.hpp"
#include "homsym/expr.hpp"

using namespace homsym;

TEST_CASE("constructors fold lightly") {
  Expr x = var_x(), t = var_t();
  CHECK(Expr::sum({}).is_zero_constant());
  CHECK((x + Expr()).kind() == ExprKind::Leaf);
  CHECK(Expr::sum({Expr::integer(2), Expr::integer(3)}).value() == Rational(5));

  Expr p = Expr::product({Expr::integer(0), x});
  CHECK(p.is_zero_constant());
  CHECK((Expr::integer(1) * x).kind() == ExprKind::Leaf);

  // Nested sums and products flatten.
  Expr s = (x + t) + x;
  CHECK(s.kind() == ExprKind::Sum);
  CHECK(s.operands().size() == 3);

  CHECK(Expr::pow(x, 0).is_one_constant());
  CHECK(Expr::pow(Expr::pow(x, 2), 3).exponent() == 6);
  CHECK(Expr::pow(Expr::integer(2), -2).value() == Rational(1, 4));
  CHECK_THROWS_AS(Expr::pow(Expr(), -1), DivisionByZeroError);
  CHECK_THROWS_AS(x / Expr(), DivisionByZeroError);

  // Powers distribute over products.
  Expr q = Expr::pow(x * t, 2);
  CHECK(q.kind() == ExprKind::Product);
}

TEST_CASE("atom spellings") {
  CHECK(Atom::dep(0, 0).spelling() == "u");
  CHECK(Atom::dep(2, 1).spelling() == "u_xxt");
  CHECK(Atom::coeff(1, 3, 1).spelling() == "u1_xxxt");
  CHECK(Atom::coeff(2, 0, 0, CoeffFamily::Tilde).spelling() == "tu2");
  CHECK(Atom::coeff(1, 1, 0, CoeffFamily::Hat).spelling() == "hu1_x");
  CHECK(Atom::param("theta").spelling() == "theta");
  Expr u0 = ucoeff(0);
  CHECK(Atom::func("F", 2, u0).spelling() == "F''(u0)");
}

TEST_CASE("function atoms canonicalize their argument") {
  Expr u = dep_u();
  Expr twisted = (Expr::integer(2) * u) / Expr::integer(2);
  Atom plain = Atom::func("F", 0, u);
  Atom fancy = Atom::func("F", 0, twisted);
  CHECK(atom_equal(plain, fancy));
}

TEST_CASE("printing") {
  Expr x = var_x(), t = var_t();
  CHECK((x + t).str() == "x + t");
  CHECK(Expr::pow(x + t, 2).str() == "(x + t)^2");
  CHECK((x - Expr::integer(3) * t).str() == "x - 3*t");
  CHECK((Expr::integer(1) / Expr::pow(ucoeff(0), 2)).str() == "1/u0^2");
  CHECK((rat(3, 4) * x).str() == "3*x/4");
  CHECK((-x).str() == "-x");
  Expr frac = rat(-3) / (Expr::pow(param("a"), 2) * Expr::pow(param("a") * t - x, 4));
  CHECK(frac.str() == "-3/a^2/(a*t - x)^4");
  // A subtracted group keeps its parentheses.
  Expr g = x - (t + param("a"));
  CHECK(g.str() == "x - (t + a)");
}

TEST_CASE("structural equality") {
  Expr a = var_x() + ucoeff(1);
  Expr b = var_x() + ucoeff(1);
  Expr c = ucoeff(1) + var_x();
  CHECK(structural_equal(a, b));
  CHECK(!structural_equal(a, c));  // order matters structurally
  CHECK(!structural_equal(a, a + Expr::integer(1)));
}

TEST_CASE("atom total order") {
  // Independents, then parameters, then dep, then coefficients, then funcs.
  CHECK(atom_cmp(Atom::indep(0), Atom::param("a")) < 0);
  CHECK(atom_cmp(Atom::param("a"), Atom::dep(0, 0)) < 0);
  CHECK(atom_cmp(Atom::dep(0, 0), Atom::coeff(0, 0, 0)) < 0);
  CHECK(atom_cmp(Atom::coeff(0, 0, 0), Atom::coeff(1, 0, 0)) < 0);
  CHECK(atom_cmp(Atom::coeff(1, 0, 0), Atom::coeff(1, 1, 0)) < 0);
  CHECK(atom_cmp(Atom::coeff(1, 99, 0), Atom::func("F", 0, dep_u())) < 0);
  CHECK(atom_cmp(Atom::func("F", 0, dep_u()), Atom::func("F", 1, dep_u())) < 0);
}

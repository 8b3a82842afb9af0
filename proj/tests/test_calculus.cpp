#include <random>

#include "doctest.h"
#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"

using namespace homsym;

namespace {

// Independent differentiation oracle: rewrites the tree as a pair
// (numerator, denominator) of negative-power-free expressions and applies
// only the product and quotient rules, never d(b^k) with k < 0.
struct FracPair {
  Expr num;
  Expr den;
};

FracPair fracture(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Leaf:
      return {e, Expr::integer(1)};
    case ExprKind::Sum: {
      FracPair acc{Expr(), Expr::integer(1)};
      for (const auto& k : e.operands()) {
        FracPair f = fracture(k);
        acc = {acc.num * f.den + f.num * acc.den, acc.den * f.den};
      }
      return acc;
    }
    case ExprKind::Product: {
      FracPair acc{Expr::integer(1), Expr::integer(1)};
      for (const auto& k : e.operands()) {
        FracPair f = fracture(k);
        acc = {acc.num * f.num, acc.den * f.den};
      }
      return acc;
    }
    case ExprKind::Power: {
      FracPair b = fracture(e.base());
      long long k = e.exponent();
      if (k >= 0) return {Expr::pow(b.num, k), Expr::pow(b.den, k)};
      return {Expr::pow(b.den, -k), Expr::pow(b.num, -k)};
    }
  }
  return {Expr(), Expr::integer(1)};
}

// Differentiates an expression containing no negative powers.
Expr diff_positive(const Expr& e, int axis) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr();
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      if (a.kind == AtomKind::Indep) return a.name == indep_name(axis) ? Expr::integer(1) : Expr();
      if (a.kind == AtomKind::Param) return Expr();
      if (a.kind == AtomKind::Func) {
        Atom up = a;
        up.order += 1;
        return Expr::leaf(up) * diff_positive(a.argument(), axis);
      }
      return Expr::leaf(a.differentiated(axis));
    }
    case ExprKind::Sum: {
      std::vector<Expr> out;
      for (const auto& k : e.operands()) out.push_back(diff_positive(k, axis));
      return Expr::sum(std::move(out));
    }
    case ExprKind::Product: {
      const auto& kids = e.operands();
      std::vector<Expr> terms;
      for (size_t i = 0; i < kids.size(); ++i) {
        std::vector<Expr> f;
        for (size_t j = 0; j < kids.size(); ++j)
          f.push_back(i == j ? diff_positive(kids[j], axis) : kids[j]);
        terms.push_back(Expr::product(std::move(f)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Power: {
      REQUIRE(e.exponent() > 0);
      return Expr::integer(e.exponent()) * Expr::pow(e.base(), e.exponent() - 1) *
             diff_positive(e.base(), axis);
    }
  }
  return Expr();
}

Expr oracle_diff(const Expr& e, int axis) {
  FracPair f = fracture(e);
  Expr n = diff_positive(f.num, axis) * f.den - f.num * diff_positive(f.den, axis);
  return n / (f.den * f.den);
}

Expr random_rational_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 4 : 7);
  switch (pick(rng)) {
    case 0:
      return var_x();
    case 1:
      return var_t();
    case 2:
      return dep_u(std::uniform_int_distribution<int>(0, 1)(rng),
                   std::uniform_int_distribution<int>(0, 1)(rng));
    case 3:
      return param("a");
    case 4:
      return Expr::integer(std::uniform_int_distribution<int>(-2, 3)(rng));
    case 5:
      return random_rational_expr(rng, depth - 1) + random_rational_expr(rng, depth - 1);
    case 6:
      return random_rational_expr(rng, depth - 1) * random_rational_expr(rng, depth - 1);
    default:
      return Expr::pow(random_rational_expr(rng, depth - 1), 2);
  }
}

}  // namespace

TEST_CASE("total derivatives, basic rules") {
  CHECK(is_zero(diff_total(param("eps"), 0)));
  CHECK(diff_total(var_x(), 0).is_one_constant());
  CHECK(is_zero(diff_total(var_x(), 1)));
  CHECK(structural_equal(diff_total(dep_u(1, 0), 1), dep_u(1, 1)));
  CHECK(structural_equal(diff_total(ucoeff(2), 0, 3), ucoeff(2, 3, 0)));

  Expr e = func_apply("F", 0, ucoeff(0)) * ucoeff(0, 1, 0);
  Expr expect = parse_expression("F'(u0)*u0_x^2 + F(u0)*u0_xx");
  CHECK(equal_mod_normal(diff_total(e, 0), expect));
}

TEST_CASE("fourth x-derivative of a traveling-wave profile") {
  Expr e = parse_expression("1/(a*(a*t-x))");
  Expr d4 = diff_total(e, 0, 4);
  CHECK(equal_mod_normal(d4, parse_expression("24/(a*(a*t-x)^5)")));
  // And the independent quotient-rule oracle agrees along the way.
  Expr o = e;
  for (int i = 0; i < 4; ++i) o = oracle_diff(o, 0);
  CHECK(equal_mod_normal(d4, o));
}

TEST_CASE("derivative oracle agrees on random rational expressions") {
  std::mt19937 rng(987654);
  for (int i = 0; i < 25; ++i) {
    Expr e = random_rational_expr(rng, 3);
    for (int axis : {0, 1}) {
      CHECK(equal_mod_normal(diff_total(e, axis), oracle_diff(e, axis)));
    }
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937 rng(5150);
  for (int i = 0; i < 15; ++i) {
    Expr e = random_rational_expr(rng, 3);
    CHECK(equal_mod_normal(diff_total(diff_total(e, 0), 1), diff_total(diff_total(e, 1), 0)));
  }
}

TEST_CASE("Leibniz rule holds") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 15; ++i) {
    Expr a = random_rational_expr(rng, 2);
    Expr b = random_rational_expr(rng, 2);
    Expr lhs = diff_total(a * b, 0);
    Expr rhs = diff_total(a, 0) * b + a * diff_total(b, 0);
    CHECK(equal_mod_normal(lhs, rhs));
  }
}

TEST_CASE("formal slot derivatives") {
  Expr e = func_apply("F", 0, dep_u()) * Expr::pow(dep_u(1, 0), 2);
  CHECK(equal_mod_normal(formal_diff(e, Atom::dep(1, 0)),
                         Expr::integer(2) * func_apply("F", 0, dep_u()) * dep_u(1, 0)));
  CHECK(equal_mod_normal(formal_diff(e, Atom::dep(0, 0)),
                         func_apply("F", 1, dep_u()) * Expr::pow(dep_u(1, 0), 2)));
  CHECK(is_zero(formal_diff(e, Atom::dep(0, 1))));
}

TEST_CASE("substitution differentiates replacements to match suffixes") {
  Bindings b;
  b.coeffs.push_back({CoeffFamily::Plain, 1,
                      param("eps") * (Expr::integer(1) - param("theta")) * ucoeff(1, 0, 0, CoeffFamily::Tilde)});
  Expr e = parse_expression("d(u1,x,4)");
  Expr got = substitute(e, b);
  Expr expect = parse_expression("eps*(1-theta)*tu1_xxxx");
  CHECK(equal_mod_normal(got, expect));
}

TEST_CASE("substitution is simultaneous, not sequential") {
  Bindings b;
  b.coeffs.push_back({CoeffFamily::Plain, 1, ucoeff(2)});
  b.coeffs.push_back({CoeffFamily::Plain, 2, ucoeff(1)});
  Expr e = ucoeff(1) * ucoeff(2);
  CHECK(equal_mod_normal(substitute(e, b), ucoeff(1) * ucoeff(2)));
}

TEST_CASE("substitution cycles are rejected") {
  Bindings b;
  b.coeffs.push_back({CoeffFamily::Plain, 1, ucoeff(1) + Expr::integer(1)});
  CHECK_THROWS_AS(substitute(ucoeff(1), b), CycleError);
  Bindings d;
  d.dep = dep_u() + Expr::integer(1);
  CHECK_THROWS_AS(substitute(dep_u(), d), CycleError);
}

TEST_CASE("empty bindings leave the expression alone") {
  Expr e = parse_expression("F(u0)*u1_x + theta");
  CHECK(structural_equal(substitute(e, Bindings{}), e));
}

TEST_CASE("substitution reaches function arguments") {
  Expr e = func_apply("F", 0, dep_u());
  Expr got = substitute_dependent(e, ucoeff(0));
  CHECK(structural_equal(got, func_apply("F", 0, ucoeff(0))));
  // Derivative suffixes differentiate the replacement inside arguments too.
  Expr e2 = func_apply("F", 0, dep_u(1, 0));
  Expr got2 = substitute_dependent(e2, Expr::pow(var_x(), 2));
  CHECK(structural_equal(got2, func_apply("F", 0, Expr::integer(2) * var_x())));
}

TEST_CASE("family renaming") {
  Expr e = parse_expression("u1_x*F(u0) + u2");
  Expr r = rename_family(e, CoeffFamily::Plain, CoeffFamily::Tilde);
  CHECK(equal_mod_normal(r, parse_expression("tu1_x*F(tu0) + tu2")));
  CHECK(max_coeff_order(r, CoeffFamily::Plain) == -1);
  CHECK(max_coeff_order(r, CoeffFamily::Tilde) == 2);
}

TEST_CASE("closed-form resolution") {
  std::vector<ClosedForm> inv = {{"F", Expr::integer(1) / dep_u()}};
  Expr got = resolve_funcs(parse_expression("F''(u0)"), inv);
  CHECK(equal_mod_normal(got, parse_expression("2/u0^3")));
  std::vector<ClosedForm> lin = {{"F", dep_u()}};
  CHECK(equal_mod_normal(resolve_funcs(parse_expression("F'(u1)*F(u1)"), lin), ucoeff(1)));
}

TEST_CASE("exact evaluation") {
  EvalContext ctx;
  ctx.values.emplace_back(Atom::indep(0), Rational(3, 2));
  CHECK(eval_exact(parse_expression("x^2"), ctx) == Rational(9, 4));

  CHECK_THROWS_AS(eval_exact(parse_expression("x + t"), ctx), UnboundAtomError);

  ctx.values.emplace_back(Atom::indep(1), Rational(3, 2));
  CHECK_THROWS_AS(eval_exact(parse_expression("1/(x-t)"), ctx), PoleError);

  EvalContext fc;
  fc.values.emplace_back(Atom::coeff(0, 0, 0), Rational(2));
  fc.funcs.push_back({"F", Expr::integer(1) / dep_u()});
  CHECK(eval_exact(parse_expression("F(u0)"), fc) == Rational(1, 2));
  CHECK(eval_exact(parse_expression("F'(u0)"), fc) == Rational(-1, 4));
}

TEST_CASE("finite differences approach the symbolic derivative") {
  Expr e = parse_expression("x^3/(x+2)");
  Expr de = diff_total(e, 0);
  Rational x0(1);
  auto value = [&](const Expr& ex, const Rational& at) {
    EvalContext c;
    c.values.emplace_back(Atom::indep(0), at);
    return eval_exact(ex, c);
  };
  Rational exact = value(de, x0);
  REQUIRE(exact != 0);
  Rational prevErr;
  bool first = true;
  for (int k = 3; k <= 7; ++k) {
    Rational h(1, 1 << k);
    Rational fd = (value(e, x0 + h) - value(e, x0 - h)) / (2 * h);
    Rational err = abs(fd / exact - 1);
    if (!first) CHECK(err * 3 < prevErr);  // roughly quadratic decay
    prevErr = err;
    first = false;
  }
}

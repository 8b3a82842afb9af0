#include "doctest.h"
#include "homsym/bridge.hpp"
#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"

using namespace homsym;
using bridge::MapKind;

namespace {

series::PerturbedPDE ch_pde() {
  return {"ch", parse_expression("d(u,t) + d(F(u)*d(u,x),x)"), parse_expression("d(u,x,4)")};
}

Expr lam() { return parse_expression("eps*(1-theta)"); }

Expr at_theta0(const Expr& e) {
  Bindings b;
  b.params.emplace_back("theta", Expr());
  return substitute(e, b);
}

}  // namespace

TEST_CASE("map rows match the listed transformations") {
  auto m = bridge::build_map(MapKind::Theorem1, 3);
  CHECK(equal_mod_normal(m.image(0), ucoeff(0, 0, 0, CoeffFamily::Tilde)));
  CHECK(equal_mod_normal(m.image(1), parse_expression("eps*(1-theta)*tu1")));
  CHECK(equal_mod_normal(m.image(2),
                         parse_expression("eps*(1-theta)*(eps*(1-theta)*tu2 + theta*tu1)")));
  CHECK(equal_mod_normal(
      m.image(3),
      parse_expression(
          "eps*(1-theta)*(eps^2*(1-theta)^2*tu3 + 2*theta*eps*(1-theta)*tu2 + theta^2*tu1)")));

  auto to = bridge::build_map(MapKind::ThetaOnly, 2);
  CHECK(equal_mod_normal(to.image(2), parse_expression("hu2 + theta*hu1")));
  auto sc = bridge::build_map(MapKind::Scaling, 2);
  CHECK(equal_mod_normal(sc.image(2), parse_expression("eps^2*(1-theta)^2*tu2")));
  auto alt = bridge::build_map(MapKind::OperatorAlt, 2);
  CHECK(equal_mod_normal(alt.image(2), parse_expression("tu2 + theta*tu1/2")));
}

TEST_CASE("full map is the composition of its two stages") {
  auto to = bridge::build_map(MapKind::ThetaOnly, 4);
  auto sc = bridge::build_map(MapKind::Scaling, 4);
  auto full = bridge::build_map(MapKind::Theorem1, 4);
  for (int l = 0; l <= 4; ++l) {
    Expr staged = bridge::apply_map(bridge::apply_map(ucoeff(l), to), sc);
    CHECK(equal_mod_normal(staged, full.image(l)));
    for (size_t j = 0; j < full.entries[static_cast<size_t>(l)].size(); ++j) {
      Expr expected = to.entries[static_cast<size_t>(l)][j] *
                      Expr::pow(lam(), l - static_cast<int>(j));
      CHECK(equal_mod_normal(full.entries[static_cast<size_t>(l)][j], expected));
    }
  }
}

TEST_CASE("theta = 0 degenerates the map to a pure power scaling") {
  auto full = bridge::build_map(MapKind::Theorem1, 4);
  for (int l = 0; l <= 4; ++l)
    CHECK(equal_mod_normal(at_theta0(full.image(l)),
                           Expr::pow(param("eps"), l) * ucoeff(l, 0, 0, CoeffFamily::Tilde)));
  auto alt = bridge::build_map(MapKind::OperatorAlt, 3);
  for (int l = 0; l <= 3; ++l)
    CHECK(equal_mod_normal(at_theta0(alt.image(l)), ucoeff(l, 0, 0, CoeffFamily::Tilde)));
}

TEST_CASE("map application differentiates rows onto suffixed atoms") {
  auto m = bridge::build_map(MapKind::Theorem1, 2);
  Expr got = bridge::apply_map(parse_expression("d(u2,x,3)"), m);
  CHECK(equal_mod_normal(
      got, parse_expression("eps^2*(1-theta)^2*d(tu2,x,3) + theta*eps*(1-theta)*d(tu1,x,3)")));
  CHECK(equal_mod_normal(bridge::apply_map(parse_expression("F(u1)"), m),
                         parse_expression("F(eps*(1-theta)*tu1)")));
  CHECK_THROWS_AS(bridge::apply_map(ucoeff(3), m), DomainError);
}

TEST_CASE("triangular inversion round-trips") {
  auto m = bridge::build_map(MapKind::Theorem1, 4);
  auto inv = bridge::invert_map(m);
  CHECK(equal_mod_normal(inv.entries[1][0], Expr::integer(1) / lam()));
  CHECK(equal_mod_normal(inv.entries[2][0], Expr::integer(1) / Expr::pow(lam(), 2)));
  CHECK(equal_mod_normal(inv.entries[2][1], -param("theta") / Expr::pow(lam(), 2)));
  Expr probe = parse_expression("u4_x + u3*u2 + F(u1)");
  CHECK(equal_mod_normal(bridge::apply_map(bridge::apply_map(probe, m), inv), probe));
  for (MapKind k : {MapKind::ThetaOnly, MapKind::Scaling, MapKind::OperatorAlt}) {
    auto mk = bridge::build_map(k, 3);
    auto ik = bridge::invert_map(mk);
    for (int l = 0; l <= 3; ++l)
      CHECK(equal_mod_normal(bridge::apply_map(bridge::apply_map(ucoeff(l), mk), ik), ucoeff(l)));
  }
  CHECK_THROWS_AS(bridge::invert_map(inv), DomainError);
}

TEST_CASE("solution transformation and assembly") {
  bridge::SeriesSolution sol;
  sol.coefficients = {Expr::integer(1), var_x(), var_x() * var_x()};
  auto m = bridge::build_map(MapKind::Theorem1, 2);
  auto hom = bridge::apply_map_to_solution(m, sol);
  CHECK(hom.flavor == bridge::SolutionFlavor::Homotopy);
  CHECK(hom.series_param == "q");
  CHECK(equal_mod_normal(hom.coefficients[1], lam() * var_x()));
  CHECK(equal_mod_normal(hom.coefficients[2],
                         Expr::pow(lam(), 2) * var_x() * var_x() + param("theta") * lam() * var_x()));
  Expr series = bridge::assemble(hom);
  CHECK(contains_param(series, "q"));
  auto back = bridge::apply_map_to_solution(bridge::invert_map(m), hom);
  CHECK(back.flavor == bridge::SolutionFlavor::Asm);
  for (int l = 0; l <= 2; ++l)
    CHECK(equal_mod_normal(back.coefficients[static_cast<size_t>(l)],
                           sol.coefficients[static_cast<size_t>(l)]));
  CHECK_THROWS_AS(bridge::apply_map_to_solution(m, hom), DomainError);
}

TEST_CASE("theta-stage identity for the derivative chains") {
  auto p = ch_pde();
  auto r2 = bridge::verify_lemma2(p, 2);
  CHECK(r2.ok);
  REQUIRE(r2.coefficients.size() == 1);
  CHECK(r2.coefficients[0].first == 2);
  CHECK(equal_mod_normal(r2.coefficients[0].second, parse_expression("2*theta")));

  auto r3 = bridge::verify_lemma2(p, 3);
  CHECK(r3.ok);
  REQUIRE(r3.coefficients.size() == 2);
  CHECK(equal_mod_normal(r3.coefficients[0].second, parse_expression("6*theta^2")));
  CHECK(equal_mod_normal(r3.coefficients[1].second, parse_expression("6*theta")));

  series::PerturbedPDE lin{"lin", parse_expression("d(u,t) + d(u,x,2)"),
                           parse_expression("d(u,x,4)")};
  CHECK(bridge::verify_lemma2(lin, 2).ok);
  CHECK(bridge::verify_lemma2(p, 1).ok);
}

TEST_CASE("bridging transformation verified on the generic model") {
  auto rep = bridge::verify_theorem1(ch_pde(), 3);
  CHECK(rep.ok);
  REQUIRE(rep.orders.size() == 4);
  for (const auto& chk : rep.orders) {
    CHECK(chk.theta_stage_ok);
    CHECK(chk.scaling_stage_ok);
    CHECK(chk.direct_ok);
    CHECK(is_zero(chk.residual));
  }
  // Scaling stage at order 1 lands on the listed tilde form.
  auto sc = bridge::build_map(MapKind::Scaling, 1);
  CHECK(equal_mod_normal(
      bridge::apply_map(rep.orders[1].intermediate, sc),
      parse_expression("eps*(1-theta)*(d(tu1,t) + d(F(tu0)*tu1,x,2) + d(tu0,x,4))")));
  // The order-2 intermediate is the hatted display line.
  CHECK(equal_mod_normal(
      rep.orders[2].intermediate,
      parse_expression(
          "2*d(hu2,t) + d(F'(hu0)*hu1^2 + 2*hu2*F(hu0),x,2) + 2*eps*(1-theta)*d(hu1,x,4)")));
  // Reduction weights at order 3.
  REQUIRE(rep.orders[3].certificate.size() == 2);
  CHECK(equal_mod_normal(rep.orders[3].certificate[0].second, parse_expression("6*theta^2")));
  CHECK(equal_mod_normal(rep.orders[3].certificate[1].second, parse_expression("6*theta")));
}

TEST_CASE("operator pushforward differences") {
  auto alt = bridge::operator_diagnostic(3, MapKind::OperatorAlt);
  CHECK(is_zero(alt[0].forward));
  CHECK(is_zero(alt[0].backward));
  CHECK(is_zero(alt[1].forward));
  CHECK(is_zero(alt[1].backward));
  CHECK(equal_mod_normal(alt[2].forward, parse_expression("theta*u1/2")));
  CHECK(equal_mod_normal(alt[2].backward, parse_expression("-theta*tu1/2")));
  CHECK(!is_zero(alt[3].forward));

  auto thm = bridge::operator_diagnostic(4, MapKind::Theorem1);
  for (const auto& d : thm) {
    CHECK(is_zero(d.forward));
    CHECK(is_zero(d.backward));
  }
}

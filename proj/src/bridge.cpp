#include "homsym/bridge.hpp"

#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"

namespace homsym::bridge {

namespace {

Expr theta() { return param("theta"); }
Expr lam() { return param("eps") * (Expr::integer(1) - param("theta")); }

std::pair<CoeffFamily, CoeffFamily> families(MapKind kind) {
  switch (kind) {
    case MapKind::ThetaOnly:
      return {CoeffFamily::Plain, CoeffFamily::Hat};
    case MapKind::Scaling:
      return {CoeffFamily::Hat, CoeffFamily::Tilde};
    case MapKind::Theorem1:
    case MapKind::OperatorAlt:
      return {CoeffFamily::Plain, CoeffFamily::Tilde};
  }
  return {CoeffFamily::Plain, CoeffFamily::Tilde};
}

// l!/(i-1)! * C(l-1, i-2) * theta^(l-i+1), the reduction weight of the
// (i-1)-th lower chain inside order l.
Expr reduction_multiplier(int l, int i) {
  Rational c(factorial(l), factorial(i - 1));
  c *= Rational(binomial(l - 1, i - 2));
  return Expr::constant(c) * Expr::pow(theta(), l - i + 1);
}

// Paper-form perturbation equation l in the given family:
// (d^l E0/dq^l + l d^(l-1) E1/dq^(l-1)) at q=0.
Expr asm_equation(const series::PerturbedPDE& pde, int l, CoeffFamily family) {
  Expr eq = series::q_derivative_at0(pde.e0, l, family);
  if (l >= 1)
    eq = eq + Expr::integer(l) * series::q_derivative_at0(pde.e1, l - 1, family);
  return eq;
}

// Hatted intermediate form of order l:
// d^l E0/dq^l + eps*l*(1-theta)*d^(l-1) E1/dq^(l-1), hat coefficients.
Expr hat_intermediate(const series::PerturbedPDE& pde, int l) {
  Expr eq = series::q_derivative_at0(pde.e0, l, CoeffFamily::Hat);
  if (l >= 1)
    eq = eq + Expr::integer(l) * lam() * series::q_derivative_at0(pde.e1, l - 1, CoeffFamily::Hat);
  return eq;
}

}  // namespace

Expr CoefficientMap::image(int l) const {
  const auto& row = entries[static_cast<size_t>(l)];
  std::vector<Expr> terms;
  terms.reserve(row.size());
  for (size_t j = 0; j < row.size(); ++j)
    terms.push_back(row[j] * ucoeff(l - static_cast<int>(j), 0, 0, target));
  return Expr::sum(std::move(terms));
}

CoefficientMap build_map(MapKind kind, int order) {
  if (order < 0) throw DomainError("negative map order");
  CoefficientMap m;
  m.kind = kind;
  m.order = order;
  auto [src, tgt] = families(kind);
  m.source = src;
  m.target = tgt;
  m.entries.resize(static_cast<size_t>(order) + 1);
  m.entries[0] = {Expr::integer(1)};
  for (int l = 1; l <= order; ++l) {
    auto& row = m.entries[static_cast<size_t>(l)];
    switch (kind) {
      case MapKind::ThetaOnly:
        for (int j = 0; j < l; ++j)
          row.push_back(Expr::constant(Rational(binomial(l - 1, j))) * Expr::pow(theta(), j));
        break;
      case MapKind::Scaling:
        row.push_back(Expr::pow(lam(), l));
        break;
      case MapKind::Theorem1:
        for (int j = 0; j < l; ++j)
          row.push_back(Expr::constant(Rational(binomial(l - 1, j))) * Expr::pow(theta(), j) *
                        Expr::pow(lam(), l - j));
        break;
      case MapKind::OperatorAlt:
        for (int j = 0; j < l; ++j)
          row.push_back(Expr::constant(Rational(binomial(l - 1, j) * (l - j), l)) *
                        Expr::pow(theta(), j));
        break;
    }
  }
  return m;
}

CoefficientMap invert_map(const CoefficientMap& m) {
  if (m.inverted) throw DomainError("map is already inverted");
  CoefficientMap inv;
  inv.kind = m.kind;
  inv.order = m.order;
  inv.inverted = true;
  inv.source = m.target;
  inv.target = m.source;
  inv.entries.resize(static_cast<size_t>(m.order) + 1);
  inv.entries[0] = {Expr::integer(1)};
  auto entry = [&](int l, int j) -> Expr {
    const auto& row = m.entries[static_cast<size_t>(l)];
    return j < static_cast<int>(row.size()) ? row[static_cast<size_t>(j)] : Expr();
  };
  for (int l = 1; l <= m.order; ++l) {
    auto& w = inv.entries[static_cast<size_t>(l)];
    for (int s = 0; s < l; ++s) {
      Expr acc = s == 0 ? Expr::integer(1) : Expr();
      for (int j = 1; j <= s; ++j)
        acc = acc - entry(l, j) * inv.entries[static_cast<size_t>(l - j)][static_cast<size_t>(s - j)];
      w.push_back(acc / entry(l, 0));
    }
  }
  return inv;
}

Expr apply_map(const Expr& e, const CoefficientMap& m) {
  int present = max_coeff_order(e, m.source);
  if (present > m.order) throw DomainError("expression holds coefficient order above the map order");
  Bindings b;
  for (int l = 0; l <= m.order; ++l) b.coeffs.push_back({m.source, l, m.image(l)});
  return substitute(e, b);
}

SeriesSolution apply_map_to_solution(const CoefficientMap& m, const SeriesSolution& sol) {
  SolutionFlavor expect = m.inverted ? SolutionFlavor::Homotopy : SolutionFlavor::Asm;
  if (sol.flavor != expect)
    throw DomainError("solution flavor does not match the map direction");
  int n = static_cast<int>(sol.coefficients.size()) - 1;
  if (n > m.order) throw DomainError("map order below the solution order");
  SeriesSolution out;
  out.flavor = m.inverted ? SolutionFlavor::Asm : SolutionFlavor::Homotopy;
  out.series_param = out.flavor == SolutionFlavor::Asm ? "eps" : "q";
  for (int l = 0; l <= n; ++l) {
    const auto& row = m.entries[static_cast<size_t>(l)];
    std::vector<Expr> terms;
    for (size_t j = 0; j < row.size(); ++j)
      terms.push_back(row[j] * sol.coefficients[static_cast<size_t>(l) - j]);
    out.coefficients.push_back(Expr::sum(std::move(terms)));
  }
  return out;
}

Expr assemble(const SeriesSolution& sol) {
  Expr p = param(sol.series_param);
  std::vector<Expr> terms;
  for (size_t l = 0; l < sol.coefficients.size(); ++l)
    terms.push_back(Expr::pow(p, static_cast<long long>(l)) * sol.coefficients[l]);
  return Expr::sum(std::move(terms));
}

Lemma2Report verify_lemma2(const series::PerturbedPDE& pde, int n) {
  if (n < 1) throw DomainError("lemma check needs a positive order");
  series::validate_pde(pde);
  Lemma2Report rep;
  rep.n = n;
  CoefficientMap to = build_map(MapKind::ThetaOnly, n);
  Expr chainN = series::q_derivative_at0(pde.e0, n);
  rep.lhs = rename_family(apply_map(chainN, to), CoeffFamily::Hat, CoeffFamily::Plain);
  std::vector<Expr> terms = {chainN};
  for (int i = 2; i <= n; ++i) {
    Expr mu = reduction_multiplier(n, i);
    rep.coefficients.emplace_back(i, mu);
    terms.push_back(mu * series::q_derivative_at0(pde.e0, i - 1));
  }
  rep.rhs = Expr::sum(std::move(terms));
  rep.residual = rep.lhs - rep.rhs;
  rep.ok = is_zero(rep.residual);
  return rep;
}

Theorem1Report verify_theorem1(const series::PerturbedPDE& pde, int order) {
  if (order < 0) throw DomainError("negative verification order");
  series::validate_pde(pde);
  Theorem1Report rep;
  rep.order = order;
  rep.ok = true;
  auto re = series::rearrange(series::generate_ahsm_raw(pde, order));
  CoefficientMap to = build_map(MapKind::ThetaOnly, order);
  CoefficientMap sc = build_map(MapKind::Scaling, order);
  CoefficientMap full = build_map(MapKind::Theorem1, order);
  std::vector<Expr> hat(static_cast<size_t>(order) + 1);
  std::vector<Expr> tilde(static_cast<size_t>(order) + 1);
  for (int l = 0; l <= order; ++l) {
    hat[static_cast<size_t>(l)] = hat_intermediate(pde, l);
    tilde[static_cast<size_t>(l)] =
        Expr::pow(lam(), l) * asm_equation(pde, l, CoeffFamily::Tilde);
  }
  for (int l = 0; l <= order; ++l) {
    OrderCheck chk;
    chk.l = l;
    chk.intermediate = hat[static_cast<size_t>(l)];
    for (int i = 2; i <= l; ++i) chk.certificate.emplace_back(i, reduction_multiplier(l, i));

    Expr eq = re.hierarchy.equations[static_cast<size_t>(l)];
    std::vector<Expr> lower1 = {apply_map(eq, to)};
    std::vector<Expr> lower2 = {apply_map(eq, full)};
    for (const auto& [i, mu] : chk.certificate) {
      lower1.push_back(-(mu * hat[static_cast<size_t>(i - 1)]));
      lower2.push_back(-(mu * tilde[static_cast<size_t>(i - 1)]));
    }
    chk.theta_stage_ok = is_zero(Expr::sum(std::move(lower1)) - chk.intermediate);
    chk.scaling_stage_ok =
        is_zero(apply_map(chk.intermediate, sc) - tilde[static_cast<size_t>(l)]);
    chk.residual = Expr::sum(std::move(lower2)) - tilde[static_cast<size_t>(l)];
    chk.direct_ok = is_zero(chk.residual);
    rep.ok = rep.ok && chk.theta_stage_ok && chk.scaling_stage_ok && chk.direct_ok;
    rep.orders.push_back(std::move(chk));
  }
  return rep;
}

std::vector<OperatorDiff> operator_diagnostic(int order, MapKind kind) {
  if (order < 0) throw DomainError("negative diagnostic order");
  CoefficientMap m = build_map(kind, order);
  CoefficientMap inv = invert_map(m);
  // Coefficient of the plain-side operator at order l, and the tilde-side
  // coefficient l*u_l in the map's target family.
  auto eta = [&](int l) {
    Expr e = Expr::integer(l) * ucoeff(l, 0, 0, m.source);
    if (l >= 1) e = e - Expr::integer(l - 1) * theta() * ucoeff(l - 1, 0, 0, m.source);
    return e;
  };
  auto eta_target = [&](int l) { return Expr::integer(l) * ucoeff(l, 0, 0, m.target); };

  std::vector<OperatorDiff> out;
  for (int l = 0; l <= order; ++l) {
    OperatorDiff d;
    d.l = l;
    const auto& row = m.entries[static_cast<size_t>(l)];
    std::vector<Expr> fwd;
    for (size_t j = 0; j < row.size(); ++j)
      fwd.push_back(row[j] * eta_target(l - static_cast<int>(j)));
    d.forward = apply_map(Expr::sum(std::move(fwd)), inv) - eta(l);

    const auto& wrow = inv.entries[static_cast<size_t>(l)];
    std::vector<Expr> bwd;
    for (size_t s = 0; s < wrow.size(); ++s)
      bwd.push_back(wrow[s] * eta(l - static_cast<int>(s)));
    d.backward = apply_map(Expr::sum(std::move(bwd)), m) - eta_target(l);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace homsym::bridge

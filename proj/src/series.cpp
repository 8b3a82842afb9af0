#include "homsym/series.hpp"

#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"

namespace homsym::series {

namespace {

struct SeriesVec {
  std::vector<Expr> c;  // size N+1
  explicit SeriesVec(int N) : c(static_cast<size_t>(N) + 1) {}
  int order() const { return static_cast<int>(c.size()) - 1; }
};

SeriesVec sv_const(const Expr& e, int N) {
  SeriesVec v(N);
  v.c[0] = e;
  return v;
}

SeriesVec sv_add(const SeriesVec& a, const SeriesVec& b) {
  SeriesVec r(a.order());
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

SeriesVec sv_mul(const SeriesVec& a, const SeriesVec& b) {
  SeriesVec r(a.order());
  for (int n = 0; n <= r.order(); ++n) {
    std::vector<Expr> terms;
    terms.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) terms.push_back(a.c[static_cast<size_t>(k)] * b.c[static_cast<size_t>(n - k)]);
    r.c[static_cast<size_t>(n)] = Expr::sum(std::move(terms));
  }
  return r;
}

SeriesVec sv_scale(const SeriesVec& a, const Expr& s) {
  SeriesVec r(a.order());
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = s * a.c[i];
  return r;
}

SeriesVec sv_recip(const SeriesVec& a) {
  const Expr& a0 = a.c[0];
  if (a0.is_zero_constant() || is_zero(a0))
    throw DivisionByZeroError("series reciprocal of a series with vanishing constant term");
  SeriesVec r(a.order());
  Expr b0 = Expr::pow(a0, -1);
  r.c[0] = b0;
  for (int n = 1; n <= r.order(); ++n) {
    std::vector<Expr> terms;
    for (int k = 1; k <= n; ++k)
      terms.push_back(a.c[static_cast<size_t>(k)] * r.c[static_cast<size_t>(n - k)]);
    r.c[static_cast<size_t>(n)] = -b0 * Expr::sum(std::move(terms));
  }
  return r;
}

SeriesVec sv_pow(const SeriesVec& a, long long k) {
  if (k == 0) return sv_const(Expr::integer(1), a.order());
  SeriesVec base = k < 0 ? sv_recip(a) : a;
  long long e = k < 0 ? -k : k;
  SeriesVec r = sv_const(Expr::integer(1), a.order());
  while (e > 0) {
    if (e & 1) r = sv_mul(r, base);
    e >>= 1;
    if (e) base = sv_mul(base, base);
  }
  return r;
}

struct Composer {
  std::string series_param;
  int N;
  CoeffFamily family;

  SeriesVec run(const Expr& e) const {
    switch (e.kind()) {
      case ExprKind::Constant:
        return sv_const(e, N);
      case ExprKind::Leaf: {
        const Atom& a = e.atom();
        if (a.kind == AtomKind::Param && a.name == series_param) {
          SeriesVec v(N);
          if (N >= 1) v.c[1] = Expr::integer(1);
          return v;
        }
        if (a.kind == AtomKind::Dep) {
          SeriesVec v(N);
          for (int l = 0; l <= N; ++l)
            v.c[static_cast<size_t>(l)] = ucoeff(l, a.deriv[0], a.deriv[1], family);
          return v;
        }
        if (a.kind == AtomKind::Func) {
          SeriesVec arg = run(a.argument());
          Expr a0 = arg.c[0];
          SeriesVec h = arg;
          h.c[0] = Expr();
          SeriesVec acc(N);
          SeriesVec hp = sv_const(Expr::integer(1), N);
          for (int m = 0; m <= N; ++m) {
            Expr fm = Expr::leaf(Atom::func(a.name, a.order + m, a0));
            Expr inv = Expr::constant(Rational(Int(1), factorial(m)));
            acc = sv_add(acc, sv_scale(hp, fm * inv));
            if (m < N) hp = sv_mul(hp, h);
          }
          return acc;
        }
        return sv_const(e, N);
      }
      case ExprKind::Sum: {
        SeriesVec r(N);
        for (const auto& k : e.operands()) r = sv_add(r, run(k));
        return r;
      }
      case ExprKind::Product: {
        SeriesVec r = sv_const(Expr::integer(1), N);
        for (const auto& k : e.operands()) r = sv_mul(r, run(k));
        return r;
      }
      case ExprKind::Power:
        return sv_pow(run(e.base()), e.exponent());
    }
    return sv_const(Expr(), N);
  }
};

}  // namespace

void validate_pde(const PerturbedPDE& pde) {
  for (const Expr* e : {&pde.e0, &pde.e1}) {
    for (const char* p : {"eps", "theta", "q"})
      if (contains_param(*e, p))
        throw DomainError("model equations must not mention the reserved parameter " + std::string(p));
    for (CoeffFamily f : {CoeffFamily::Plain, CoeffFamily::Tilde, CoeffFamily::Hat})
      if (max_coeff_order(*e, f) >= 0)
        throw DomainError("model equations must not mention series coefficients");
  }
  if (!contains_dep(pde.e0))
    throw DomainError("the unperturbed equation must mention the dependent variable");
}

std::vector<Expr> taylor_coefficients(const Expr& e, const std::string& series_param, int N,
                                      CoeffFamily family) {
  if (N < 0) throw DomainError("negative series order");
  Composer comp{series_param, N, family};
  return comp.run(e).c;
}

Expr expand_series(const Expr& e, const std::string& series_param, int N, CoeffFamily family) {
  auto cs = taylor_coefficients(e, series_param, N, family);
  std::vector<Expr> terms;
  terms.reserve(cs.size());
  Expr p = param(series_param);
  for (int l = 0; l <= N; ++l) terms.push_back(Expr::pow(p, l) * cs[static_cast<size_t>(l)]);
  return Expr::sum(std::move(terms));
}

Expr q_derivative_at0(const Expr& target, int order, CoeffFamily family) {
  auto cs = taylor_coefficients(target, "q", order, family);
  return Expr::constant(Rational(factorial(order))) * cs[static_cast<size_t>(order)];
}

Hierarchy generate_asm(const PerturbedPDE& pde, int order, bool paper_form) {
  validate_pde(pde);
  if (order < 0) throw DomainError("negative hierarchy order");
  Expr full = pde.e0 + param("eps") * pde.e1;
  auto cs = taylor_coefficients(full, "eps", order);
  Hierarchy h;
  h.kind = HierarchyKind::Asm;
  h.order = order;
  h.paper_form = paper_form;
  for (int i = 0; i <= order; ++i) {
    Expr eq = cs[static_cast<size_t>(i)];
    if (paper_form) eq = Expr::constant(Rational(factorial(i))) * eq;
    h.equations.push_back(eq);
  }
  return h;
}

Hierarchy generate_ahsm_raw(const PerturbedPDE& pde, int order, bool paper_form) {
  validate_pde(pde);
  if (order < 0) throw DomainError("negative hierarchy order");
  Expr th = param("theta");
  Expr q = param("q");
  Expr eps = param("eps");
  Expr H = (Expr::integer(1) - th * q) * pde.e0 + q * eps * (Expr::integer(1) - th) * pde.e1;
  auto cs = taylor_coefficients(H, "q", order);
  Hierarchy h;
  h.kind = HierarchyKind::AhsmRaw;
  h.order = order;
  h.paper_form = paper_form;
  for (int i = 0; i <= order; ++i) {
    Expr eq = cs[static_cast<size_t>(i)];
    if (paper_form) eq = Expr::constant(Rational(factorial(i))) * eq;
    h.equations.push_back(eq);
  }
  return h;
}

Rearranged rearrange(const Hierarchy& raw) {
  if (raw.kind != HierarchyKind::AhsmRaw)
    throw DomainError("rearrange expects the raw homotopy hierarchy");
  Expr th = param("theta");
  Rearranged out;
  out.hierarchy.kind = HierarchyKind::AhsmRearranged;
  out.hierarchy.order = raw.order;
  out.hierarchy.paper_form = raw.paper_form;
  for (int i = 0; i <= raw.order; ++i) {
    std::vector<Expr> terms;
    std::vector<RearrangeTerm> cert;
    for (int k = 0; k <= i; ++k) {
      // (i!/k!) theta^(i-k) times the paper-form raw equation k.
      Expr mult = Expr::constant(Rational(factorial(i), factorial(k))) * Expr::pow(th, i - k);
      Expr rawPaper = raw.equations[static_cast<size_t>(k)];
      if (!raw.paper_form) rawPaper = Expr::constant(Rational(factorial(k))) * rawPaper;
      terms.push_back(mult * rawPaper);
      if (k < i) cert.push_back({k, mult});
    }
    Expr eq = Expr::sum(std::move(terms));
    if (!raw.paper_form) eq = Expr::constant(Rational(Int(1), factorial(i))) * eq;
    out.hierarchy.equations.push_back(eq);
    out.certificate.push_back(std::move(cert));
  }
  return out;
}

LinearityReport check_linearity(const Hierarchy& h, int i) {
  if (i < 0 || i > h.order) throw DomainError("hierarchy index out of range");
  NormalForm nf = normalize(h.equations[static_cast<size_t>(i)]);
  auto is_target = [&](const Atom& a) {
    return a.kind == AtomKind::Coeff && a.order == i;
  };
  LinearityReport rep;
  rep.affine_linear = true;
  auto term_string = [&](const NormalForm::Term& t) {
    std::string s = rational_to_string(t.coeff);
    for (const auto& [id, e] : t.mono) {
      s += "*" + nf.atoms()[static_cast<size_t>(id)].spelling();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  };
  for (const auto& t : nf.den_terms()) {
    for (const auto& [id, e] : t.mono) {
      if (is_target(nf.atoms()[static_cast<size_t>(id)])) {
        rep.affine_linear = false;
        rep.max_degree = std::max(rep.max_degree, e);
        if (rep.witness.empty()) rep.witness = "denominator: " + term_string(t);
      }
    }
  }
  for (const auto& t : nf.num_terms()) {
    int deg = 0;
    for (const auto& [id, e] : t.mono)
      if (is_target(nf.atoms()[static_cast<size_t>(id)])) deg += e;
    if (deg > rep.max_degree) {
      rep.max_degree = deg;
      if (deg > 1) rep.witness = term_string(t);
    }
    if (deg > 1) rep.affine_linear = false;
  }
  return rep;
}

}  // namespace homsym::series

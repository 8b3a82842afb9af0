#include "homsym/calculus.hpp"

#include <map>
#include <unordered_map>

#include "homsym/errors.hpp"

namespace homsym {

namespace {

Expr diff_once(const Expr& e, int axis) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr();
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      switch (a.kind) {
        case AtomKind::Indep:
          return a.name == indep_name(axis) ? Expr::integer(1) : Expr();
        case AtomKind::Param:
          return Expr();
        case AtomKind::Dep:
        case AtomKind::Coeff:
          return Expr::leaf(a.differentiated(axis));
        case AtomKind::Func: {
          Atom up = a;
          up.order += 1;
          return Expr::leaf(up) * diff_once(a.argument(), axis);
        }
      }
      return Expr();
    }
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.operands().size());
      for (const auto& k : e.operands()) terms.push_back(diff_once(k, axis));
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      const auto& kids = e.operands();
      std::vector<Expr> terms;
      terms.reserve(kids.size());
      for (size_t i = 0; i < kids.size(); ++i) {
        std::vector<Expr> fac;
        fac.reserve(kids.size());
        for (size_t j = 0; j < kids.size(); ++j)
          fac.push_back(i == j ? diff_once(kids[j], axis) : kids[j]);
        terms.push_back(Expr::product(std::move(fac)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Power: {
      long long k = e.exponent();
      return Expr::integer(k) * Expr::pow(e.base(), k - 1) * diff_once(e.base(), axis);
    }
  }
  return Expr();
}

}  // namespace

Expr diff_total(const Expr& e, int axis, int n) {
  if (axis < 0 || axis >= kNumIndep) throw DomainError("derivative axis out of range");
  if (n < 0) throw DomainError("negative derivative count");
  Expr r = e;
  for (int i = 0; i < n; ++i) r = diff_once(r, axis);
  return r;
}

Expr formal_diff(const Expr& e, const Atom& slot) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr();
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      if (a.kind == AtomKind::Func) {
        Atom up = a;
        up.order += 1;
        return Expr::leaf(up) * formal_diff(a.argument(), slot);
      }
      return atom_equal(a, slot) ? Expr::integer(1) : Expr();
    }
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      for (const auto& k : e.operands()) terms.push_back(formal_diff(k, slot));
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      const auto& kids = e.operands();
      std::vector<Expr> terms;
      for (size_t i = 0; i < kids.size(); ++i) {
        std::vector<Expr> fac;
        for (size_t j = 0; j < kids.size(); ++j)
          fac.push_back(i == j ? formal_diff(kids[j], slot) : kids[j]);
        terms.push_back(Expr::product(std::move(fac)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Power: {
      long long k = e.exponent();
      return Expr::integer(k) * Expr::pow(e.base(), k - 1) * formal_diff(e.base(), slot);
    }
  }
  return Expr();
}

namespace {

struct SubstCtx {
  const Bindings* b;
  // Differentiated replacements, keyed per rule by (dx, dt).
  mutable std::map<std::tuple<int, int, int, int>, Expr> cache;

  const Expr* coeff_rule(CoeffFamily f, int order) const {
    for (const auto& r : b->coeffs)
      if (r.family == f && r.order == order) return &r.replacement;
    return nullptr;
  }

  Expr derived(int ruleKind, int ruleIdx, const Expr& repl, int dx, int dt) const {
    auto key = std::make_tuple(ruleKind, ruleIdx, dx, dt);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Expr r = diff_total(diff_total(repl, 0, dx), 1, dt);
    cache.emplace(key, r);
    return r;
  }
};

Expr subst_rec(const Expr& e, const SubstCtx& ctx) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      switch (a.kind) {
        case AtomKind::Indep:
          return e;
        case AtomKind::Param: {
          for (size_t i = 0; i < ctx.b->params.size(); ++i)
            if (ctx.b->params[i].first == a.name) return ctx.b->params[i].second;
          return e;
        }
        case AtomKind::Dep:
          if (ctx.b->dep)
            return ctx.derived(0, 0, *ctx.b->dep, a.deriv[0], a.deriv[1]);
          return e;
        case AtomKind::Coeff: {
          for (size_t i = 0; i < ctx.b->coeffs.size(); ++i) {
            const auto& r = ctx.b->coeffs[i];
            if (r.family == a.family && r.order == a.order)
              return ctx.derived(1, static_cast<int>(i), r.replacement, a.deriv[0], a.deriv[1]);
          }
          return e;
        }
        case AtomKind::Func: {
          Expr arg = subst_rec(a.argument(), ctx);
          if (structural_equal(arg, a.argument())) return e;
          return Expr::leaf(Atom::func(a.name, a.order, arg));
        }
      }
      return e;
    }
    case ExprKind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(subst_rec(k, ctx));
      return Expr::sum(std::move(kids));
    }
    case ExprKind::Product: {
      std::vector<Expr> kids;
      kids.reserve(e.operands().size());
      for (const auto& k : e.operands()) kids.push_back(subst_rec(k, ctx));
      return Expr::product(std::move(kids));
    }
    case ExprKind::Power:
      return Expr::pow(subst_rec(e.base(), ctx), e.exponent());
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& b) {
  for (const auto& r : b.coeffs) {
    if (contains_coeff(r.replacement, r.family, r.order))
      throw CycleError("substitution for series coefficient of order " + std::to_string(r.order) +
                       " mentions the coefficient it replaces");
  }
  if (b.dep && contains_dep(*b.dep))
    throw CycleError("substitution for the dependent variable mentions the dependent variable");
  SubstCtx ctx{&b, {}};
  return subst_rec(e, ctx);
}

Expr substitute_dependent(const Expr& e, const Expr& replacement) {
  Bindings b;
  b.dep = replacement;
  return substitute(e, b);
}

Expr rename_family(const Expr& e, CoeffFamily from, CoeffFamily to) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Leaf: {
      Atom a = e.atom();
      if (a.kind == AtomKind::Coeff && a.family == from) {
        a.family = to;
        return Expr::leaf(a);
      }
      if (a.kind == AtomKind::Func) {
        Expr arg = rename_family(a.argument(), from, to);
        if (!structural_equal(arg, a.argument()))
          return Expr::leaf(Atom::func(a.name, a.order, arg));
      }
      return e;
    }
    case ExprKind::Sum: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(rename_family(k, from, to));
      return Expr::sum(std::move(kids));
    }
    case ExprKind::Product: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(rename_family(k, from, to));
      return Expr::product(std::move(kids));
    }
    case ExprKind::Power:
      return Expr::pow(rename_family(e.base(), from, to), e.exponent());
  }
  return e;
}

namespace {

template <typename Pred>
bool any_atom(const Expr& e, const Pred& pred) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return false;
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      if (pred(a)) return true;
      if (a.kind == AtomKind::Func) return any_atom(a.argument(), pred);
      return false;
    }
    case ExprKind::Power:
      return any_atom(e.base(), pred);
    case ExprKind::Sum:
    case ExprKind::Product:
      for (const auto& k : e.operands())
        if (any_atom(k, pred)) return true;
      return false;
  }
  return false;
}

}  // namespace

bool contains_param(const Expr& e, const std::string& name) {
  return any_atom(e, [&](const Atom& a) { return a.kind == AtomKind::Param && a.name == name; });
}

bool contains_dep(const Expr& e) {
  return any_atom(e, [](const Atom& a) { return a.kind == AtomKind::Dep; });
}

bool contains_coeff(const Expr& e, CoeffFamily family, int order) {
  return any_atom(e, [&](const Atom& a) {
    return a.kind == AtomKind::Coeff && a.family == family && a.order == order;
  });
}

int max_coeff_order(const Expr& e, CoeffFamily family) {
  int best = -1;
  any_atom(e, [&](const Atom& a) {
    if (a.kind == AtomKind::Coeff && a.family == family) best = std::max(best, a.order);
    return false;
  });
  return best;
}

namespace {

const ClosedForm* find_func(const std::vector<ClosedForm>& funcs, const std::string& name) {
  for (const auto& f : funcs)
    if (f.name == name) return &f;
  return nullptr;
}

// j-th formal derivative of the closed-form body with respect to the bare
// dependent atom.
Expr body_derivative(const ClosedForm& cf, int j, std::map<std::pair<std::string, int>, Expr>& cache) {
  auto key = std::make_pair(cf.name, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Expr r = j == 0 ? cf.body : formal_diff(body_derivative(cf, j - 1, cache), Atom::dep(0, 0));
  cache.emplace(key, r);
  return r;
}

}  // namespace

Expr resolve_funcs(const Expr& e, const std::vector<ClosedForm>& funcs) {
  std::map<std::pair<std::string, int>, Expr> cache;
  struct Rec {
    const std::vector<ClosedForm>& funcs;
    std::map<std::pair<std::string, int>, Expr>& cache;
    Expr operator()(const Expr& e) const {
      switch (e.kind()) {
        case ExprKind::Constant:
          return e;
        case ExprKind::Leaf: {
          const Atom& a = e.atom();
          if (a.kind != AtomKind::Func) return e;
          const ClosedForm* cf = find_func(funcs, a.name);
          if (!cf) return e;
          Expr body = body_derivative(*cf, a.order, cache);
          Expr arg = (*this)(a.argument());
          // Composition, not rewriting: the argument may mention the
          // dependent variable, so skip the self-reference guard.
          Bindings b;
          b.dep = arg;
          SubstCtx ctx{&b, {}};
          return subst_rec(body, ctx);
        }
        case ExprKind::Sum: {
          std::vector<Expr> kids;
          for (const auto& k : e.operands()) kids.push_back((*this)(k));
          return Expr::sum(std::move(kids));
        }
        case ExprKind::Product: {
          std::vector<Expr> kids;
          for (const auto& k : e.operands()) kids.push_back((*this)(k));
          return Expr::product(std::move(kids));
        }
        case ExprKind::Power:
          return Expr::pow((*this)(e.base()), e.exponent());
      }
      return e;
    }
  };
  return Rec{funcs, cache}(e);
}

namespace {

struct Evaluator {
  const EvalContext& ctx;
  std::unordered_map<const ExprNode*, Rational> memo;
  std::map<std::pair<std::string, int>, Expr> bodyCache;

  Rational eval(const Expr& e) {
    auto it = memo.find(e.node());
    if (it != memo.end()) return it->second;
    Rational r = compute(e);
    memo.emplace(e.node(), r);
    return r;
  }

  Rational compute(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Constant:
        return e.value();
      case ExprKind::Leaf: {
        const Atom& a = e.atom();
        if (a.kind == AtomKind::Func) {
          const ClosedForm* cf = find_func(ctx.funcs, a.name);
          if (!cf)
            throw UnboundAtomError("no closed form bound for function " + a.name);
          Rational v = eval(a.argument());
          Expr body = body_derivative(*cf, a.order, bodyCache);
          EvalContext sub;
          sub.values.emplace_back(Atom::dep(0, 0), v);
          sub.funcs = ctx.funcs;
          Evaluator ev{sub, {}, {}};
          return ev.eval(body);
        }
        for (const auto& [atom, val] : ctx.values)
          if (atom_equal(atom, a)) return val;
        throw UnboundAtomError("no value bound for atom " + a.spelling());
      }
      case ExprKind::Sum: {
        Rational r = 0;
        for (const auto& k : e.operands()) r += eval(k);
        return r;
      }
      case ExprKind::Product: {
        // No zero short-circuit: a pole in a later factor must still throw.
        Rational r = 1;
        for (const auto& k : e.operands()) r *= eval(k);
        return r;
      }
      case ExprKind::Power: {
        Rational b = eval(e.base());
        long long k = e.exponent();
        if (b == 0 && k < 0)
          throw PoleError("evaluation hits a pole: zero base raised to power " + std::to_string(k));
        Rational r = 1;
        Rational base = k > 0 ? b : Rational(1) / b;
        for (long long i = 0, n = k > 0 ? k : -k; i < n; ++i) r *= base;
        return r;
      }
    }
    return 0;
  }
};

}  // namespace

Rational eval_exact(const Expr& e, const EvalContext& ctx) {
  Evaluator ev{ctx, {}, {}};
  return ev.eval(e);
}

}  // namespace homsym

#include "homsym/normal_form.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

#include "homsym/errors.hpp"

namespace homsym {
namespace {

using Mono = NormalForm::Mono;

int mono_degree(const Mono& m) {
  int d = 0;
  for (const auto& ie : m) d += ie.second;
  return d;
}

// Graded lexicographic: lower total degree first, then at the smallest
// differing atom id the smaller exponent first.
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first != b[j].first) {
        // The one owning the smaller id has a positive exponent there.
        return a[i].first < b[j].first ? false : true;
      }
      if (a[i].second != b[j].second) return a[i].second < b[j].second;
      ++i;
      ++j;
    }
    return false;  // equal total degree and one is a prefix: identical
  }
};

using Poly = std::map<Mono, Rational, MonoLess>;

Poly pconst(const Rational& c) {
  Poly p;
  if (c != 0) p.emplace(Mono{}, c);
  return p;
}

bool pis_const(const Poly& p) { return p.empty() || (p.size() == 1 && p.begin()->first.empty()); }

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
    else if (i >= a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Mono> mono_div(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0;
  for (const auto& [id, e] : b) {
    while (i < a.size() && a[i].first < id) r.push_back(a[i++]);
    if (i >= a.size() || a[i].first != id || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(id, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

Mono mono_gcd(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else {
      r.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return r;
}

void padd_term(Poly& p, const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) padd_term(r, m, c);
  return r;
}

Poly psub(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) padd_term(r, m, -c);
  return r;
}

Poly pscale(const Poly& a, const Rational& c) {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, v] : a) r.emplace(m, v * c);
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r;
  if (a.empty() || b.empty()) return r;
  if (a.size() == 1) {
    const auto& [ma, ca] = *a.begin();
    for (const auto& [m, c] : b) r.emplace_hint(r.end(), mono_mul(ma, m), ca * c);
    return r;
  }
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) padd_term(r, mono_mul(ma, mb), ca * cb);
  return r;
}

Poly ppow(const Poly& a, long long k) {
  if (k == 0) return pconst(1);
  if (a.size() == 1) {
    const auto& [m, c] = *a.begin();
    Mono mm;
    for (const auto& [id, e] : m) mm.emplace_back(id, e * static_cast<int>(k));
    Rational cc = 1;
    for (long long i = 0; i < k; ++i) cc *= c;
    Poly r;
    r.emplace(std::move(mm), std::move(cc));
    return r;
  }
  Poly r = pconst(1);
  Poly base = a;
  long long e = k;
  while (e > 0) {
    if (e & 1) r = pmul(r, base);
    e >>= 1;
    if (e) base = pmul(base, base);
  }
  return r;
}

// ---- gcd machinery over primitive integer polynomials ----

// Scales to integer coefficients, divides by the integer content, and makes
// the graded-lex leading coefficient positive.
Poly make_primitive(const Poly& a) {
  if (a.empty()) return a;
  Int l = 1;
  for (const auto& kv : a) l = lcm(l, denominator(kv.second));
  Int g = 0;
  for (const auto& kv : a) g = gcd(g, numerator(kv.second) * (l / denominator(kv.second)));
  if (g == 0) return a;
  bool neg = a.rbegin()->second < 0;
  Rational scale(neg ? -l : l, g);
  return pscale(a, scale);
}

std::optional<Poly> divexact(const Poly& a, const Poly& b) {
  assert(!b.empty());
  Poly q;
  Poly r = a;
  const auto& ltb = *b.rbegin();
  while (!r.empty()) {
    const auto& ltr = *r.rbegin();
    auto qm = mono_div(ltr.first, ltb.first);
    if (!qm) return std::nullopt;
    Rational qc = ltr.second / ltb.second;
    Poly step;
    for (const auto& [m, c] : b) step.emplace_hint(step.end(), mono_mul(*qm, m), c * qc);
    q.emplace(*qm, qc);
    r = psub(r, step);
  }
  return q;
}

int deg_in(const Poly& p, int v) {
  int d = 0;
  for (const auto& kv : p)
    for (const auto& ie : kv.first)
      if (ie.first == v) d = std::max(d, ie.second);
  return d;
}

// Coefficient of v^k, as a polynomial without v.
Poly coeff_of(const Poly& p, int v, int k) {
  Poly r;
  for (const auto& [m, c] : p) {
    int e = 0;
    Mono rest;
    for (const auto& [id, ex] : m) {
      if (id == v) e = ex;
      else rest.emplace_back(id, ex);
    }
    if (e == k) r.emplace(std::move(rest), c);
  }
  return r;
}

Poly mul_by_var_pow(const Poly& p, int v, int k) {
  if (k == 0) return p;
  Mono vm{{v, k}};
  Poly r;
  for (const auto& [m, c] : p) r.emplace(mono_mul(m, vm), c);
  return r;
}

Poly pgcd(const Poly& a, const Poly& b);

// Content of p viewed as a univariate polynomial in v.
Poly content_in(const Poly& p, int v) {
  Poly g;
  int d = deg_in(p, v);
  for (int k = 0; k <= d; ++k) {
    Poly c = coeff_of(p, v, k);
    if (c.empty()) continue;
    g = g.empty() ? make_primitive(c) : pgcd(g, c);
    if (pis_const(g)) return pconst(1);
  }
  return g.empty() ? pconst(1) : g;
}

// Pseudo-remainder of a by b in the variable v.
Poly prem(Poly r, const Poly& b, int v) {
  int db = deg_in(b, v);
  Poly lcb = coeff_of(b, v, db);
  while (!r.empty()) {
    int dr = deg_in(r, v);
    if (dr < db) break;
    Poly lcr = coeff_of(r, v, dr);
    r = psub(pmul(lcb, r), pmul(mul_by_var_pow(lcr, v, dr - db), b));
  }
  return r;
}

std::vector<int> vars_of(const Poly& p) {
  std::vector<int> vs;
  for (const auto& kv : p)
    for (const auto& ie : kv.first)
      if (std::find(vs.begin(), vs.end(), ie.first) == vs.end()) vs.push_back(ie.first);
  std::sort(vs.begin(), vs.end());
  return vs;
}

// Full multivariate gcd, primitive with positive leading coefficient.
Poly pgcd(const Poly& a0, const Poly& b0) {
  if (a0.empty()) return b0.empty() ? Poly{} : make_primitive(b0);
  if (b0.empty()) return make_primitive(a0);

  // Pull out the common monomial factor first; it is cheap and frequent.
  Mono ma = a0.begin()->first;
  for (const auto& kv : a0) ma = mono_gcd(ma, kv.first);
  Mono mb = b0.begin()->first;
  for (const auto& kv : b0) mb = mono_gcd(mb, kv.first);
  Mono mg = mono_gcd(ma, mb);

  Poly a, b;
  for (const auto& kv : a0) a.emplace(*mono_div(kv.first, ma), kv.second);
  for (const auto& kv : b0) b.emplace(*mono_div(kv.first, mb), kv.second);
  a = make_primitive(a);
  b = make_primitive(b);

  Poly monoFactor;
  monoFactor.emplace(mg, Rational(1));

  if (pis_const(a) || pis_const(b)) return monoFactor;
  if (a == b) return pmul(a, monoFactor);
  if (divexact(a, b).has_value()) return pmul(b, monoFactor);
  if (divexact(b, a).has_value()) return pmul(a, monoFactor);

  std::vector<int> va = vars_of(a), vb = vars_of(b), common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  if (common.empty()) return monoFactor;
  int v = common.front();

  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly cont = pgcd(ca, cb);
  Poly ppa = *divexact(a, ca);
  Poly ppb = *divexact(b, cb);
  if (deg_in(ppa, v) < deg_in(ppb, v)) std::swap(ppa, ppb);

  Poly g;
  while (true) {
    Poly r = prem(ppa, ppb, v);
    if (r.empty()) {
      g = ppb;
      break;
    }
    if (deg_in(r, v) == 0) {
      g = pconst(1);
      break;
    }
    ppa = std::move(ppb);
    ppb = *divexact(r, content_in(r, v));
    ppb = make_primitive(ppb);
  }
  g = make_primitive(g);
  return pmul(pmul(cont, g), monoFactor);
}

// ---- fraction arithmetic ----

struct Frac {
  Poly num;
  Poly den;  // nonzero
};

Frac frac_const(const Rational& c) { return {pconst(c), pconst(1)}; }

void fix_zero(Frac& f) {
  if (f.num.empty()) f.den = pconst(1);
}

Frac fadd(const Frac& x, const Frac& y) {
  Frac r;
  if (x.den == y.den) {
    r.num = padd(x.num, y.num);
    r.den = x.den;
    Poly g = pgcd(r.num, r.den);
    if (!pis_const(g)) {
      r.num = *divexact(r.num, g);
      r.den = *divexact(r.den, g);
    }
    fix_zero(r);
    return r;
  }
  Poly g = pgcd(x.den, y.den);
  if (pis_const(g)) {
    r.num = padd(pmul(x.num, y.den), pmul(y.num, x.den));
    r.den = pmul(x.den, y.den);
  } else {
    Poly dx = *divexact(x.den, g);
    Poly dy = *divexact(y.den, g);
    r.num = padd(pmul(x.num, dy), pmul(y.num, dx));
    Poly h = pgcd(r.num, g);
    r.den = pmul(pmul(dx, dy), g);
    if (!pis_const(h)) {
      r.num = *divexact(r.num, h);
      r.den = *divexact(r.den, h);
    }
  }
  fix_zero(r);
  return r;
}

Frac fmul(const Frac& x, const Frac& y) {
  Frac r;
  if (x.num.empty() || y.num.empty()) return frac_const(0);
  Poly g1 = pgcd(x.num, y.den);
  Poly g2 = pgcd(y.num, x.den);
  Poly n1 = pis_const(g1) ? x.num : *divexact(x.num, g1);
  Poly d2 = pis_const(g1) ? y.den : *divexact(y.den, g1);
  Poly n2 = pis_const(g2) ? y.num : *divexact(y.num, g2);
  Poly d1 = pis_const(g2) ? x.den : *divexact(x.den, g2);
  r.num = pmul(n1, n2);
  r.den = pmul(d1, d2);
  return r;
}

Frac fpow(const Frac& x, long long k) {
  if (k == 0) return frac_const(1);
  Frac b = x;
  if (k < 0) {
    if (x.num.empty()) throw DivisionByZeroError("expression denominator vanishes identically");
    std::swap(b.num, b.den);
    k = -k;
    // keep sign canonical later; nothing else needed
  }
  Frac r;
  r.num = ppow(b.num, k);
  r.den = ppow(b.den, k);
  return r;
}

// ---- atom collection and poly building ----

void collect_atoms(const Expr& e, std::vector<Atom>& out) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return;
    case ExprKind::Leaf:
      out.push_back(e.atom());
      return;
    case ExprKind::Power:
      collect_atoms(e.base(), out);
      return;
    case ExprKind::Sum:
    case ExprKind::Product:
      for (const auto& k : e.operands()) collect_atoms(k, out);
      return;
  }
}

struct AtomTable {
  std::vector<Atom> atoms;  // canonical order
  int id_of(const Atom& a) const {
    int lo = 0, hi = static_cast<int>(atoms.size()) - 1;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      int c = atom_cmp(atoms[static_cast<size_t>(mid)], a);
      if (c == 0) return mid;
      if (c < 0) lo = mid + 1;
      else hi = mid - 1;
    }
    throw DomainError("atom not interned");
  }
};

Frac build(const Expr& e, const AtomTable& table) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return frac_const(e.value());
    case ExprKind::Leaf: {
      Frac f;
      f.num.emplace(Mono{{table.id_of(e.atom()), 1}}, Rational(1));
      f.den = pconst(1);
      return f;
    }
    case ExprKind::Sum: {
      Frac r = frac_const(0);
      for (const auto& k : e.operands()) r = fadd(r, build(k, table));
      return r;
    }
    case ExprKind::Product: {
      Frac r = frac_const(1);
      for (const auto& k : e.operands()) {
        r = fmul(r, build(k, table));
        if (r.num.empty()) return frac_const(0);
      }
      return r;
    }
    case ExprKind::Power:
      return fpow(build(e.base(), table), e.exponent());
  }
  return frac_const(0);
}

}  // namespace

NormalForm NormalForm::of(const Expr& e) {
  std::vector<Atom> found;
  collect_atoms(e, found);
  std::sort(found.begin(), found.end(), [](const Atom& a, const Atom& b) { return atom_cmp(a, b) < 0; });
  found.erase(std::unique(found.begin(), found.end(), atom_equal), found.end());

  AtomTable table{found};
  Frac f = build(e, table);

  // Make the denominator monic in its leading coefficient.
  if (f.num.empty()) {
    f.den = pconst(1);
  } else {
    Rational lc = f.den.rbegin()->second;
    if (lc != 1) {
      f.num = pscale(f.num, Rational(1) / lc);
      f.den = pscale(f.den, Rational(1) / lc);
    }
  }

  // Drop atoms that cancelled away and remap ids.
  std::vector<int> used(found.size(), 0);
  auto mark = [&](const Poly& p) {
    for (const auto& kv : p)
      for (const auto& ie : kv.first) used[static_cast<size_t>(ie.first)] = 1;
  };
  mark(f.num);
  mark(f.den);
  std::vector<int> remap(found.size(), -1);
  NormalForm nf;
  for (size_t i = 0; i < found.size(); ++i) {
    if (used[i]) {
      remap[i] = static_cast<int>(nf.atoms_.size());
      nf.atoms_.push_back(found[i]);
    }
  }
  auto flatten = [&](const Poly& p, std::vector<Term>& out) {
    out.reserve(p.size());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      Term t;
      t.mono.reserve(it->first.size());
      for (const auto& [id, ex] : it->first) t.mono.emplace_back(remap[static_cast<size_t>(id)], ex);
      t.coeff = it->second;
      out.push_back(std::move(t));
    }
  };
  flatten(f.num, nf.num_);
  flatten(f.den, nf.den_);
  return nf;
}

bool NormalForm::den_is_one() const {
  return den_.size() == 1 && den_[0].mono.empty() && den_[0].coeff == 1;
}

bool NormalForm::equals(const NormalForm& other) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (!atom_equal(atoms_[i], other.atoms_[i])) return false;
  auto same = [](const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].mono != b[i].mono || a[i].coeff != b[i].coeff) return false;
    return true;
  };
  return same(num_, other.num_) && same(den_, other.den_);
}

namespace {

std::string term_body(const NormalForm::Term& t, const std::vector<Atom>& atoms) {
  std::string s;
  for (const auto& [id, e] : t.mono) {
    if (!s.empty()) s += "*";
    const Atom& a = atoms[static_cast<size_t>(id)];
    std::string sp = a.spelling();
    if (a.kind == AtomKind::Func && e > 1) sp = "(" + sp + ")";
    s += sp;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string poly_str(const std::vector<NormalForm::Term>& terms, const std::vector<Atom>& atoms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string body = term_body(t, atoms);
    if (body.empty()) {
      out += rational_to_string(c);
    } else {
      if (c != 1) out += rational_to_string(c) + "*";
      out += body;
    }
  }
  return out;
}

}  // namespace

std::string NormalForm::str() const {
  if (den_is_one()) return poly_str(num_, atoms_);
  return "(" + poly_str(num_, atoms_) + ")/(" + poly_str(den_, atoms_) + ")";
}

std::string NormalForm::latex() const { return to_expression().latex(); }

Expr NormalForm::to_expression() const {
  auto poly_expr = [&](const std::vector<Term>& terms) {
    std::vector<Expr> sum;
    sum.reserve(terms.size());
    for (const auto& t : terms) {
      std::vector<Expr> fac;
      fac.push_back(Expr::constant(t.coeff));
      for (const auto& [id, e] : t.mono)
        fac.push_back(Expr::pow(Expr::leaf(atoms_[static_cast<size_t>(id)]), e));
      sum.push_back(Expr::product(std::move(fac)));
    }
    return Expr::sum(std::move(sum));
  };
  Expr n = poly_expr(num_);
  if (den_is_one()) return n;
  return n / poly_expr(den_);
}

NormalForm normalize(const Expr& e) { return NormalForm::of(e); }

bool is_zero(const Expr& e) { return normalize(e).is_zero(); }

bool equal_mod_normal(const Expr& a, const Expr& b) { return is_zero(a - b); }

}  // namespace homsym

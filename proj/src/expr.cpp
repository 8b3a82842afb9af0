#include "homsym/expr.hpp"

#include <algorithm>
#include <array>

#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"

namespace homsym {

const std::string& indep_name(int axis) {
  static const std::array<std::string, kNumIndep> names = {"x", "t"};
  return names.at(static_cast<size_t>(axis));
}

// ---- Atom ----

Atom Atom::indep(int axis) {
  Atom a;
  a.kind = AtomKind::Indep;
  a.name = indep_name(axis);
  return a;
}

Atom Atom::param(std::string name) {
  Atom a;
  a.kind = AtomKind::Param;
  a.name = std::move(name);
  return a;
}

Atom Atom::dep(int dx, int dt) {
  Atom a;
  a.kind = AtomKind::Dep;
  a.deriv[0] = dx;
  a.deriv[1] = dt;
  return a;
}

Atom Atom::coeff(int order, int dx, int dt, CoeffFamily family) {
  Atom a;
  a.kind = AtomKind::Coeff;
  a.order = order;
  a.deriv[0] = dx;
  a.deriv[1] = dt;
  a.family = family;
  return a;
}

Atom Atom::func(std::string name, int order, const Expr& argument) {
  Atom a;
  a.kind = AtomKind::Func;
  a.name = std::move(name);
  a.order = order;
  a.arg = normalize(argument).to_expression().share();
  return a;
}

Expr Atom::argument() const {
  if (kind != AtomKind::Func) throw DomainError("argument() on non-function atom");
  return Expr::from_node(arg);
}

Atom Atom::differentiated(int axis) const {
  Atom a = *this;
  a.deriv[axis] += 1;
  return a;
}

std::string Atom::spelling() const {
  switch (kind) {
    case AtomKind::Indep:
    case AtomKind::Param:
      return name;
    case AtomKind::Dep:
    case AtomKind::Coeff: {
      std::string s;
      if (kind == AtomKind::Coeff) {
        if (family == CoeffFamily::Tilde) s += "t";
        if (family == CoeffFamily::Hat) s += "h";
        s += "u" + std::to_string(order);
      } else {
        s = "u";
      }
      if (deriv[0] + deriv[1] > 0) {
        s += "_";
        s.append(static_cast<size_t>(deriv[0]), 'x');
        s.append(static_cast<size_t>(deriv[1]), 't');
      }
      return s;
    }
    case AtomKind::Func: {
      std::string s = name;
      s.append(static_cast<size_t>(order), '\'');
      s += "(" + argument().str() + ")";
      return s;
    }
  }
  return {};
}

std::string Atom::latex() const {
  switch (kind) {
    case AtomKind::Indep:
      return name;
    case AtomKind::Param:
      if (name == "theta") return "\\theta";
      if (name == "eps") return "\\epsilon";
      return name;
    case AtomKind::Dep:
    case AtomKind::Coeff: {
      std::string head = "u";
      if (kind == AtomKind::Coeff && family == CoeffFamily::Tilde) head = "\\tilde{u}";
      if (kind == AtomKind::Coeff && family == CoeffFamily::Hat) head = "\\hat{u}";
      std::string sub;
      if (kind == AtomKind::Coeff) sub = std::to_string(order);
      if (deriv[0] + deriv[1] > 0) {
        if (!sub.empty()) sub += ",";
        sub.append(static_cast<size_t>(deriv[0]), 'x');
        sub.append(static_cast<size_t>(deriv[1]), 't');
      }
      if (sub.empty()) return head;
      return head + "_{" + sub + "}";
    }
    case AtomKind::Func: {
      std::string s = name;
      s.append(static_cast<size_t>(order), '\'');
      return s + "\\left(" + argument().latex() + "\\right)";
    }
  }
  return {};
}

namespace {
int kind_rank(AtomKind k) {
  switch (k) {
    case AtomKind::Indep: return 0;
    case AtomKind::Param: return 1;
    case AtomKind::Dep: return 2;
    case AtomKind::Coeff: return 3;
    case AtomKind::Func: return 4;
  }
  return 5;
}
}  // namespace

int atom_cmp(const Atom& a, const Atom& b) {
  if (int d = kind_rank(a.kind) - kind_rank(b.kind); d != 0) return d;
  if (int d = a.name.compare(b.name); d != 0) return d;
  if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family) ? -1 : 1;
  if (a.order != b.order) return a.order < b.order ? -1 : 1;
  for (int i = 0; i < kNumIndep; ++i)
    if (a.deriv[i] != b.deriv[i]) return a.deriv[i] < b.deriv[i] ? -1 : 1;
  if (a.kind == AtomKind::Func) {
    // Arguments are stored canonically, so their printed forms are
    // faithful comparison keys.
    std::string sa = a.argument().str();
    std::string sb = b.argument().str();
    if (int d = sa.compare(sb); d != 0) return d;
  }
  return 0;
}

bool atom_equal(const Atom& a, const Atom& b) { return atom_cmp(a, b) == 0; }

// ---- Expr construction ----

namespace {
std::shared_ptr<const ExprNode> make_node(ExprNode&& n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

const std::shared_ptr<const ExprNode>& zero_node() {
  static const std::shared_ptr<const ExprNode> z = [] {
    ExprNode n;
    n.kind = ExprKind::Constant;
    n.value = 0;
    return make_node(std::move(n));
  }();
  return z;
}
}  // namespace

Expr::Expr() : p_(zero_node()) {}

Expr Expr::from_node(std::shared_ptr<const ExprNode> n) {
  Expr e;
  if (n) e.p_ = std::move(n);
  return e;
}

Expr Expr::constant(Rational value) {
  ExprNode n;
  n.kind = ExprKind::Constant;
  n.value = std::move(value);
  Expr e;
  e.p_ = make_node(std::move(n));
  return e;
}

Expr Expr::integer(long long value) { return constant(Rational(value)); }

Expr Expr::leaf(Atom a) {
  ExprNode n;
  n.kind = ExprKind::Leaf;
  n.atom = std::move(a);
  Expr e;
  e.p_ = make_node(std::move(n));
  return e;
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> kids;
  Rational c = 0;
  for (auto& t : terms) {
    if (t.kind() == ExprKind::Constant) {
      c += t.value();
    } else if (t.kind() == ExprKind::Sum) {
      for (const auto& k : t.operands()) {
        if (k.kind() == ExprKind::Constant) c += k.value();
        else kids.push_back(k);
      }
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (c != 0) kids.push_back(Expr::constant(c));
  if (kids.empty()) return Expr();
  if (kids.size() == 1) return kids[0];
  ExprNode n;
  n.kind = ExprKind::Sum;
  n.kids = std::move(kids);
  Expr e;
  e.p_ = make_node(std::move(n));
  return e;
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> kids;
  Rational c = 1;
  for (auto& f : factors) {
    if (f.kind() == ExprKind::Constant) {
      c *= f.value();
    } else if (f.kind() == ExprKind::Product) {
      for (const auto& k : f.operands()) {
        if (k.kind() == ExprKind::Constant) c *= k.value();
        else kids.push_back(k);
      }
    } else {
      kids.push_back(std::move(f));
    }
  }
  if (c == 0) return Expr();
  if (c != 1) kids.insert(kids.begin(), Expr::constant(c));
  if (kids.empty()) return Expr::integer(1);
  if (kids.size() == 1) return kids[0];
  ExprNode n;
  n.kind = ExprKind::Product;
  n.kids = std::move(kids);
  Expr e;
  e.p_ = make_node(std::move(n));
  return e;
}

Expr Expr::pow(Expr base, long long exponent) {
  if (exponent == 0) return Expr::integer(1);
  if (exponent == 1) return base;
  if (base.kind() == ExprKind::Constant) {
    const Rational& v = base.value();
    if (v == 0) {
      if (exponent < 0) throw DivisionByZeroError("zero raised to a negative power");
      return Expr();
    }
    Rational r = 1;
    Rational b = exponent > 0 ? v : Rational(1) / v;
    long long k = exponent > 0 ? exponent : -exponent;
    for (long long i = 0; i < k; ++i) r *= b;
    return Expr::constant(r);
  }
  if (base.kind() == ExprKind::Power) {
    return Expr::pow(base.base(), base.exponent() * exponent);
  }
  if (base.kind() == ExprKind::Product) {
    std::vector<Expr> kids;
    kids.reserve(base.operands().size());
    for (const auto& k : base.operands()) kids.push_back(Expr::pow(k, exponent));
    return Expr::product(std::move(kids));
  }
  ExprNode n;
  n.kind = ExprKind::Power;
  n.kids.push_back(std::move(base));
  n.expo = exponent;
  Expr e;
  e.p_ = make_node(std::move(n));
  return e;
}

ExprKind Expr::kind() const { return p_->kind; }
const Rational& Expr::value() const { return p_->value; }
const Atom& Expr::atom() const { return p_->atom; }
const std::vector<Expr>& Expr::operands() const { return p_->kids; }
const Expr& Expr::base() const { return p_->kids[0]; }
long long Expr::exponent() const { return p_->expo; }

bool Expr::is_constant() const { return p_->kind == ExprKind::Constant; }
bool Expr::is_zero_constant() const { return is_constant() && p_->value == 0; }
bool Expr::is_one_constant() const { return is_constant() && p_->value == 1; }

bool structural_equal(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Constant:
      return a.value() == b.value();
    case ExprKind::Leaf:
      return atom_equal(a.atom(), b.atom());
    case ExprKind::Power:
      return a.exponent() == b.exponent() && structural_equal(a.base(), b.base());
    case ExprKind::Sum:
    case ExprKind::Product: {
      if (a.operands().size() != b.operands().size()) return false;
      for (size_t i = 0; i < a.operands().size(); ++i)
        if (!structural_equal(a.operands()[i], b.operands()[i])) return false;
      return true;
    }
  }
  return false;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::product({Expr::integer(-1), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_constant()) throw DivisionByZeroError("division by the zero constant");
  return Expr::product({a, Expr::pow(b, -1)});
}
Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }

Expr var_x() { return Expr::leaf(Atom::indep(0)); }
Expr var_t() { return Expr::leaf(Atom::indep(1)); }
Expr param(const std::string& name) { return Expr::leaf(Atom::param(name)); }
Expr dep_u(int dx, int dt) { return Expr::leaf(Atom::dep(dx, dt)); }
Expr ucoeff(int order, int dx, int dt, CoeffFamily family) {
  return Expr::leaf(Atom::coeff(order, dx, dt, family));
}
Expr func_apply(const std::string& name, int order, const Expr& argument) {
  return Expr::leaf(Atom::func(name, order, argument));
}
Expr rat(long long num, long long den) { return Expr::constant(Rational(num, den)); }

// ---- Printing ----

namespace {

// Splits a leading numeric sign off a term for sum printing.
std::pair<bool, Expr> split_sign(const Expr& e) {
  if (e.kind() == ExprKind::Constant && e.value() < 0)
    return {true, Expr::constant(-e.value())};
  if (e.kind() == ExprKind::Product) {
    const auto& kids = e.operands();
    if (!kids.empty() && kids[0].kind() == ExprKind::Constant && kids[0].value() < 0) {
      std::vector<Expr> rest(kids.begin(), kids.end());
      rest[0] = Expr::constant(-kids[0].value());
      return {true, Expr::product(std::move(rest))};
    }
  }
  return {false, e};
}

std::string print_expr(const Expr& e, bool parens_for_sum);

std::string print_factor(const Expr& e) {
  // A string safe to appear as a multiplicand.
  switch (e.kind()) {
    case ExprKind::Sum:
      return "(" + print_expr(e, false) + ")";
    case ExprKind::Constant: {
      const Rational& v = e.value();
      if (v < 0 || denominator(v) != 1) return "(" + rational_to_string(v) + ")";
      return rational_to_string(v);
    }
    case ExprKind::Product:
      return "(" + print_expr(e, false) + ")";
    default:
      return print_expr(e, false);
  }
}

std::string print_expr(const Expr& e, bool parens_for_sum) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return rational_to_string(e.value());
    case ExprKind::Leaf:
      return e.atom().spelling();
    case ExprKind::Power: {
      long long k = e.exponent();
      std::string b = print_factor(e.base());
      if (k >= 0) return b + "^" + std::to_string(k);
      if (k == -1) return "1/" + b;
      return "1/" + b + "^" + std::to_string(-k);
    }
    case ExprKind::Product: {
      std::vector<std::string> num, den;
      Rational c = 1;
      for (const auto& f : e.operands()) {
        if (f.kind() == ExprKind::Constant) {
          c *= f.value();
          continue;
        }
        if (f.kind() == ExprKind::Power && f.exponent() < 0) {
          long long k = -f.exponent();
          std::string b = print_factor(f.base());
          den.push_back(k == 1 ? b : b + "^" + std::to_string(k));
          continue;
        }
        num.push_back(print_factor(f));
      }
      if (numerator(c) != 1 || num.empty()) {
        std::string cs = numerator(c).str();
        if (numerator(c) == 1 && !num.empty()) {
          // skip unit coefficient
        } else if (numerator(c) == -1 && !num.empty()) {
          num.insert(num.begin(), "-1");
        } else {
          num.insert(num.begin(), cs);
        }
      }
      if (denominator(c) != 1) den.insert(den.begin(), denominator(c).str());
      std::string out;
      for (size_t i = 0; i < num.size(); ++i) {
        if (i) out += "*";
        out += num[i];
      }
      if (num.empty()) out = "1";
      for (const auto& d : den) out += "/" + d;
      // A leading -1* reads poorly; fold it into a minus sign.
      if (out.rfind("-1*", 0) == 0) out = "-" + out.substr(3);
      return out;
    }
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.operands()) {
        auto [neg, pos] = split_sign(t);
        // A sign-stripped term can itself be a sum; keep it grouped.
        std::string ts = print_expr(pos, pos.kind() == ExprKind::Sum);
        if (first) {
          out += (neg ? "-" : "") + ts;
          first = false;
        } else {
          out += neg ? " - " : " + ";
          out += ts;
        }
      }
      if (parens_for_sum) return "(" + out + ")";
      return out;
    }
  }
  return {};
}

std::string latex_expr(const Expr& e);

std::string latex_factor(const Expr& e) {
  if (e.kind() == ExprKind::Sum || e.kind() == ExprKind::Product ||
      (e.kind() == ExprKind::Constant && (e.value() < 0 || denominator(e.value()) != 1)))
    return "\\left(" + latex_expr(e) + "\\right)";
  return latex_expr(e);
}

std::string latex_expr(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant: {
      const Rational& v = e.value();
      if (denominator(v) == 1) return numerator(v).str();
      std::string s;
      if (v < 0) s += "-";
      s += "\\frac{" + Int(abs(numerator(v))).str() + "}{" + denominator(v).str() + "}";
      return s;
    }
    case ExprKind::Leaf:
      return e.atom().latex();
    case ExprKind::Power: {
      long long k = e.exponent();
      if (k < 0) return "\\frac{1}{" + latex_factor(e.base()) + "^{" + std::to_string(-k) + "}}";
      return latex_factor(e.base()) + "^{" + std::to_string(k) + "}";
    }
    case ExprKind::Product: {
      std::string num, den;
      Rational c = 1;
      for (const auto& f : e.operands()) {
        if (f.kind() == ExprKind::Constant) {
          c *= f.value();
          continue;
        }
        bool inv = f.kind() == ExprKind::Power && f.exponent() < 0;
        std::string piece = inv ? latex_expr(Expr::pow(f.base(), -f.exponent())) : latex_factor(f);
        auto& side = inv ? den : num;
        if (!side.empty()) side += " ";
        side += piece;
      }
      std::string sign = c < 0 ? "-" : "";
      Rational ac = abs(c);
      if (numerator(ac) != 1 || num.empty()) num = numerator(ac).str() + (num.empty() ? "" : " ") + num;
      if (denominator(ac) != 1) den = denominator(ac).str() + (den.empty() ? "" : " ") + den;
      if (den.empty()) return sign + num;
      return sign + "\\frac{" + num + "}{" + den + "}";
    }
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.operands()) {
        auto [neg, pos] = split_sign(t);
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        out += pos.kind() == ExprKind::Sum ? latex_factor(pos) : latex_expr(pos);
        first = false;
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string Expr::str() const { return print_expr(*this, false); }
std::string Expr::latex() const { return latex_expr(*this); }

}  // namespace homsym

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "homsym/rational.hpp"

namespace homsym {

enum class ExprKind : std::uint8_t { Constant, Leaf, Sum, Product, Power };
enum class AtomKind : std::uint8_t { Indep, Param, Dep, Coeff, Func };
enum class CoeffFamily : std::uint8_t { Plain, Tilde, Hat };

inline constexpr int kNumIndep = 2;  // x, t
const std::string& indep_name(int axis);

struct ExprNode;
class Expr;

// A symbol occurring in expressions. Func atoms carry their argument
// expression, stored in canonical (normal) form so that structural
// comparison of atoms is meaningful.
struct Atom {
  AtomKind kind = AtomKind::Indep;
  std::string name;                      // Indep, Param, Func
  int order = 0;                         // Coeff: series index; Func: derivative count
  int deriv[kNumIndep] = {0, 0};         // Dep, Coeff: d/dx and d/dt counts
  CoeffFamily family = CoeffFamily::Plain;
  std::shared_ptr<const ExprNode> arg;   // Func only

  static Atom indep(int axis);
  static Atom param(std::string name);
  static Atom dep(int dx, int dt);
  static Atom coeff(int order, int dx, int dt, CoeffFamily family = CoeffFamily::Plain);
  static Atom func(std::string name, int order, const Expr& argument);

  Expr argument() const;                 // Func only
  Atom differentiated(int axis) const;   // Dep/Coeff only
  std::string spelling() const;          // u1_xxt, tu2, theta, F''(u0), ...
  std::string latex() const;
};

bool atom_equal(const Atom& a, const Atom& b);
int atom_cmp(const Atom& a, const Atom& b);  // strict total order, construction independent

// Immutable expression handle. Construction applies light canonical folds
// (flattening, constant folding, zero/one elimination) but never expands
// products over sums; full canonicalization lives in normal_form.
class Expr {
 public:
  Expr();  // constant 0
  static Expr constant(Rational value);
  static Expr integer(long long value);
  static Expr leaf(Atom a);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, long long exponent);

  ExprKind kind() const;
  const Rational& value() const;             // Constant
  const Atom& atom() const;                  // Leaf
  const std::vector<Expr>& operands() const; // Sum, Product
  const Expr& base() const;                  // Power
  long long exponent() const;                // Power

  bool is_constant() const;
  bool is_zero_constant() const;
  bool is_one_constant() const;

  std::string str() const;
  std::string latex() const;

  const ExprNode* node() const { return p_.get(); }
  std::shared_ptr<const ExprNode> share() const { return p_; }
  static Expr from_node(std::shared_ptr<const ExprNode> n);

 private:
  std::shared_ptr<const ExprNode> p_;
};

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  Rational value;            // Constant
  Atom atom;                 // Leaf
  std::vector<Expr> kids;    // Sum, Product; Power uses kids[0] as base
  long long expo = 0;        // Power
};

bool structural_equal(const Expr& a, const Expr& b);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Convenience factories for the symbols used throughout.
Expr var_x();
Expr var_t();
Expr param(const std::string& name);   // eps, theta, q, a, ...
Expr dep_u(int dx = 0, int dt = 0);
Expr ucoeff(int order, int dx = 0, int dt = 0, CoeffFamily family = CoeffFamily::Plain);
Expr func_apply(const std::string& name, int order, const Expr& argument);
Expr rat(long long num, long long den = 1);

}  // namespace homsym

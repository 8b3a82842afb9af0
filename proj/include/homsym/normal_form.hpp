#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homsym/expr.hpp"

namespace homsym {

// Canonical form of an expression: a reduced fraction of expanded
// multivariate polynomials over the atoms occurring in the expression.
// Invariants: numerator and denominator are coprime, the denominator is
// monic in graded-lex leading coefficient and never zero, a zero value is
// represented as 0/1 with an empty atom list, and atom ids are assigned in
// the canonical atom order so equal values have identical representations.
class NormalForm {
 public:
  using Mono = std::vector<std::pair<int, int>>;  // (atom id, exponent>0), id-sorted
  struct Term {
    Mono mono;
    Rational coeff;
  };

  bool is_zero() const { return num_.empty(); }
  bool equals(const NormalForm& other) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  // Terms in descending graded-lex order (leading term first).
  const std::vector<Term>& num_terms() const { return num_; }
  const std::vector<Term>& den_terms() const { return den_; }
  bool den_is_one() const;

  std::string str() const;
  std::string latex() const;
  Expr to_expression() const;

  static NormalForm of(const Expr& e);

 private:
  std::vector<Atom> atoms_;
  std::vector<Term> num_;
  std::vector<Term> den_;
};

NormalForm normalize(const Expr& e);
bool is_zero(const Expr& e);
// Exact equality of values: normalize(a - b) vanishes.
bool equal_mod_normal(const Expr& a, const Expr& b);

}  // namespace homsym

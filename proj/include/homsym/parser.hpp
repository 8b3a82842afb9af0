#pragma once

#include <string>
#include <vector>

#include "homsym/expr.hpp"

namespace homsym {

// Names an expression is allowed to mention. x and t are always the
// independent variables; d, dx and dt are reserved derivative operators.
struct SymbolTable {
  std::vector<std::string> params = {"eps", "theta", "q", "a"};
  std::vector<std::string> funcs = {"F"};
  std::string dep = "u";
  bool allow_dep = true;
  bool allow_series = true;  // u0, u1_xx, tu1, hu2, ...
};

// Recursive-descent parser for the expression language:
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | base ("^" INT)?
//   base   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
//           | "d" "(" expr "," IDENT ("," INT)?  ")"
//           | "dx" "(" expr ")" | "dt" "(" expr ")"
// NUMBER is an integer or decimal literal, read exactly. Derivative
// operators are applied eagerly, so the result contains plain atoms only.
// Function identifiers may carry trailing primes (F', F'') so that printed
// derivative forms read back.
Expr parse_expression(const std::string& text, const SymbolTable& table = SymbolTable());

}  // namespace homsym

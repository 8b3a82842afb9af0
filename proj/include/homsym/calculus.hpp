#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homsym/expr.hpp"

namespace homsym {

// Total derivative d/dx (axis 0) or d/dt (axis 1), applied n times.
// Dependent-variable and series-coefficient atoms pick up derivative
// suffixes; parameters differentiate to zero.
Expr diff_total(const Expr& e, int axis, int n = 1);

// Partial derivative treating the given atom as an independent slot and
// every other non-function atom as constant; function atoms differentiate
// by the chain rule through their argument.
Expr formal_diff(const Expr& e, const Atom& slot);

// Simultaneous substitution: replacements are never rescanned.
// Coefficient bindings are keyed by (family, order); a matched atom with
// derivative suffixes receives the correspondingly differentiated
// replacement. A coefficient replacement mentioning its own key throws
// CycleError.
struct Bindings {
  std::vector<std::pair<std::string, Expr>> params;
  struct CoeffRule {
    CoeffFamily family;
    int order;
    Expr replacement;
  };
  std::vector<CoeffRule> coeffs;
  std::optional<Expr> dep;  // u and derivatives
};

Expr substitute(const Expr& e, const Bindings& b);
Expr substitute_dependent(const Expr& e, const Expr& replacement);
Expr rename_family(const Expr& e, CoeffFamily from, CoeffFamily to);

bool contains_param(const Expr& e, const std::string& name);
bool contains_dep(const Expr& e);
bool contains_coeff(const Expr& e, CoeffFamily family, int order);
// Largest series-coefficient order present for the family, -1 when none.
int max_coeff_order(const Expr& e, CoeffFamily family);

// Closed form for a symbolic function: body is an expression in the bare
// dependent atom u, e.g. 1/u for F(u)=1/u.
struct ClosedForm {
  std::string name;
  Expr body;
};

// Replaces every function atom by the correspondingly differentiated closed
// form evaluated at the atom's argument.
Expr resolve_funcs(const Expr& e, const std::vector<ClosedForm>& funcs);

struct EvalContext {
  std::vector<std::pair<Atom, Rational>> values;
  std::vector<ClosedForm> funcs;
};

Rational eval_exact(const Expr& e, const EvalContext& ctx);

}  // namespace homsym

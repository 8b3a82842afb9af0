#pragma once

#include <string>
#include <vector>

#include "homsym/expr.hpp"

namespace homsym::series {

// A perturbed evolution equation E0 + eps*E1 = 0. Both sides are plain
// expressions in x, t, the dependent variable, declared parameters, and
// symbolic functions; they must not mention eps, theta, q, or any series
// coefficient.
struct PerturbedPDE {
  std::string name;
  Expr e0;
  Expr e1;
};

void validate_pde(const PerturbedPDE& pde);

enum class HierarchyKind { Asm, AhsmRaw, AhsmRearranged };

// Coupled equation system, one expression per order 0..order. With
// paper_form each entry is the order-th q (or eps) derivative at 0, i.e.
// order! times the Taylor coefficient; without it, the bare coefficient.
struct Hierarchy {
  HierarchyKind kind = HierarchyKind::Asm;
  int order = 0;
  bool paper_form = true;
  std::vector<Expr> equations;
};

// Taylor coefficients 0..N of e after substituting the series
// sum_{l} param^l u_l for the dependent variable. Truncation is exact:
// coefficient i depends only on u_0..u_i.
std::vector<Expr> taylor_coefficients(const Expr& e, const std::string& series_param, int N,
                                      CoeffFamily family = CoeffFamily::Plain);

// The substituted-and-truncated expression itself, sum param^l c_l.
Expr expand_series(const Expr& e, const std::string& series_param, int N,
                   CoeffFamily family = CoeffFamily::Plain);

// order!-scaled derivative (d^order/dq^order ...)|_{q=0} of the target with
// the series substituted, i.e. the paper-form hierarchy building block.
Expr q_derivative_at0(const Expr& target, int order, CoeffFamily family = CoeffFamily::Plain);

Hierarchy generate_asm(const PerturbedPDE& pde, int order, bool paper_form = true);
Hierarchy generate_ahsm_raw(const PerturbedPDE& pde, int order, bool paper_form = true);

// Telescoping combination taking the raw homotopy hierarchy to the
// rearranged one. certificate[i] lists the lower raw equations folded into
// rearranged equation i together with their theta multipliers (stated for
// the paper-form normalization).
struct RearrangeTerm {
  int source;
  Expr multiplier;
};
struct Rearranged {
  Hierarchy hierarchy;
  std::vector<std::vector<RearrangeTerm>> certificate;
};
Rearranged rearrange(const Hierarchy& raw);

struct LinearityReport {
  bool affine_linear = false;
  int max_degree = 0;
  std::string witness;  // offending monomial when nonlinear
};
// Whether equation i is affine-linear in u_i and its derivatives.
LinearityReport check_linearity(const Hierarchy& h, int i);

}  // namespace homsym::series

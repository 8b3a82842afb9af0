#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homsym/expr.hpp"
#include "homsym/series.hpp"

namespace homsym::bridge {

// The triangular substitutions connecting the homotopy hierarchy to the
// perturbation one. ThetaOnly maps plain coefficients to hatted ones,
// Scaling maps hatted to tilde, Theorem1 is their composition, and
// OperatorAlt is the alternate map attached to the symmetry-operator pair.
enum class MapKind { ThetaOnly, Scaling, Theorem1, OperatorAlt };

struct CoefficientMap {
  MapKind kind = MapKind::Theorem1;
  int order = 0;
  bool inverted = false;
  CoeffFamily source = CoeffFamily::Plain;
  CoeffFamily target = CoeffFamily::Tilde;
  // entries[l][j] multiplies the target coefficient of order l-j in the
  // image of the source coefficient of order l; row 0 is the identity {1}.
  // Coefficients depend on theta and eps only, so the same row serves every
  // derivative suffix.
  std::vector<std::vector<Expr>> entries;

  // sum_j entries[l][j] * target-coefficient(l-j).
  Expr image(int l) const;
};

CoefficientMap build_map(MapKind kind, int order);

// Triangular inversion: expresses each target coefficient in the source
// ones. Rows are divided by the diagonal entry, which is a nonzero rational
// function of eps and theta for every supported map.
CoefficientMap invert_map(const CoefficientMap& m);

// Replaces every source-family coefficient atom, whatever its derivative
// suffix, by the correspondingly differentiated image. Throws DomainError
// when the expression holds a source coefficient above the map order.
Expr apply_map(const Expr& e, const CoefficientMap& m);

// Truncated series solution of the perturbed equation.
enum class SolutionFlavor { Asm, Homotopy };

struct SeriesSolution {
  SolutionFlavor flavor = SolutionFlavor::Asm;
  std::string series_param = "eps";  // "eps" for Asm, "q" for Homotopy
  std::vector<Expr> coefficients;    // u_0..u_N in x, t and model params
};

// Asm solution -> Homotopy solution through the map (or back through an
// inverted map). Coefficient l of the output is the map row evaluated on
// the input coefficients.
SeriesSolution apply_map_to_solution(const CoefficientMap& m, const SeriesSolution& sol);

// sum_l param^l coefficient_l with the solution's own series parameter.
Expr assemble(const SeriesSolution& sol);

// Checks that the ThetaOnly substitution into the n-th derivative chain of
// E0, hats deleted afterwards, equals the untransformed chain plus the
// theta-weighted lower chains. coefficients lists those weights (i, mu_i).
struct Lemma2Report {
  int n = 0;
  bool ok = false;
  Expr lhs;
  Expr rhs;
  Expr residual;
  std::vector<std::pair<int, Expr>> coefficients;
};

Lemma2Report verify_lemma2(const series::PerturbedPDE& pde, int n);

// Per-order verification of the bridging transformation, run three ways:
// the theta stage against the hatted intermediate form, the scaling stage
// from that intermediate to the tilde perturbation equation, and the
// one-shot map with the certificate-weighted lower equations.
struct OrderCheck {
  int l = 0;
  bool theta_stage_ok = false;
  bool scaling_stage_ok = false;
  bool direct_ok = false;
  Expr intermediate;  // hatted equation the theta stage reduces to
  Expr residual;      // one-shot route difference, zero when direct_ok
  std::vector<std::pair<int, Expr>> certificate;  // (i, multiplier), i = 2..l
};

struct Theorem1Report {
  int order = 0;
  bool ok = false;
  std::vector<OrderCheck> orders;
};

Theorem1Report verify_theorem1(const series::PerturbedPDE& pde, int order);

// Pushforward comparison of the two symmetry operators under a map: forward
// carries the tilde-side operator to plain coordinates and subtracts the
// plain-side coefficient l*u_l - (l-1)*theta*u_{l-1}; backward goes the
// other way. Differences are reported as-is, with no pass/fail claim.
struct OperatorDiff {
  int l = 0;
  Expr forward;   // in plain coefficients
  Expr backward;  // in target-family coefficients
};

std::vector<OperatorDiff> operator_diagnostic(int order, MapKind kind = MapKind::OperatorAlt);

}  // namespace homsym::bridge

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homsym/chmodel.hpp"
#include "homsym/expr.hpp"

namespace homsym::num {

// Evaluation point for residuals of the assembled series in
// u_t + [F(u)u_x]_x + eps*u_xxxx. theta must lie in [0, 1); q defaults to
// the full-equation value 1; a is the wave speed (InvU only).
struct EvalPoint {
  Rational x;
  Rational t;
  Rational eps;
  Rational q = Rational(1);
  Rational theta;
  Rational a = Rational(1);
};

// Which assembled series to evaluate. Reported is the verbatim reproduction
// target behind the reference residual values (for InvU it coincides with
// Engine); Engine is the transform of the hierarchy solution.
enum class SolutionForm { Reported, Engine };

const std::string& form_name(SolutionForm f);
std::optional<SolutionForm> form_from_name(const std::string& name);

// Exact residual at the point: substitutes the assembled series into
// E = E0 + eps*E1 symbolically, then evaluates. Throws DomainError for
// theta outside [0,1) (the homotopy model degenerates at theta=1) and for
// cases without a built-in solution; PoleError when a denominator vanishes.
Rational residual(ch::Case c, const EvalPoint& p, SolutionForm form = SolutionForm::Reported);

// theta -> residual with everything else bound. Construction folds the
// symbolic residual to a single univariate rational function of theta, so
// per-theta evaluation is two polynomial evaluations. The generic
// constructor takes the equation split and any assembled series expression;
// the case constructor wires in the built-in model and solution.
class ThetaResidual {
 public:
  ThetaResidual(ch::Case c, const EvalPoint& base, SolutionForm form = SolutionForm::Reported);
  ThetaResidual(const Expr& e0, const Expr& e1, const Expr& assembled, const EvalPoint& base);

  // Exact residual at theta in [0, 1). Throws PoleError when the bound
  // denominator vanishes at this theta.
  Rational operator()(const Rational& theta) const;

  int num_degree() const { return static_cast<int>(num_.size()) - 1; }
  int den_degree() const { return static_cast<int>(den_.size()) - 1; }

 private:
  std::vector<Rational> num_;  // dense coefficients, index = theta power
  std::vector<Rational> den_;
};

struct SweepRow {
  Rational theta;
  bool ok = false;
  Rational residual;  // meaningful when ok
  std::string note;   // error description when !ok
};

struct Sweep {
  std::vector<SweepRow> rows;
};

// Rows at theta = theta_min, theta_min+step, ... while <= theta_max.
// Requires 0 <= theta_min < theta_max < 1 and step > 0. Row-level
// evaluation errors flag the row and the sweep continues. With parallel
// (and OpenMP available) rows are computed concurrently; results are
// identical to the serial path by construction.
Sweep sweep(ch::Case c, const EvalPoint& base, const Rational& theta_min,
            const Rational& theta_max, const Rational& step,
            SolutionForm form = SolutionForm::Reported, bool parallel = true);
Sweep sweep(const ThetaResidual& f, const Rational& theta_min, const Rational& theta_max,
            const Rational& step, bool parallel = true);

// CSV with header theta,residual,abs_residual; 17 significant digits.
// Flagged rows render as theta,error,<note>.
std::string to_csv(const Sweep& s);
void write_csv(const Sweep& s, const std::string& path);

// Minimal standalone chart: one polyline of |residual| over theta, linear
// axes, no external assets.
std::string to_svg(const Sweep& s);
void write_svg(const Sweep& s, const std::string& path);

struct OptResult {
  Rational theta;
  Rational residual;      // residual at theta (signed)
  int grid_points = 0;    // coarse evaluations performed
  int refine_iterations = 0;
};

// Coarse grid at coarse_step, then golden-section refinement of |residual|
// inside the best grid bracket down to the given width. Ties break toward
// smaller theta. The result never loses to any point evaluated along the
// way, so |residual(theta*)| <= the coarse-grid minimum.
OptResult optimize_theta(ch::Case c, const EvalPoint& base,
                         SolutionForm form = SolutionForm::Reported,
                         const Rational& theta_min = Rational(0),
                         const Rational& theta_max = Rational(999, 1000),
                         const Rational& coarse_step = Rational(1, 1000),
                         const Rational& width = Rational(1, 1000000));
OptResult optimize_theta(const ThetaResidual& f, const Rational& theta_min,
                         const Rational& theta_max, const Rational& coarse_step,
                         const Rational& width);

}  // namespace homsym::num

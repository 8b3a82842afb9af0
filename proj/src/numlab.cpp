#include "homsym/numlab.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"

namespace homsym::num {

namespace {

Rational rabs(const Rational& r) { return r < Rational(0) ? -r : r; }

void check_theta(const Rational& th) {
  if (th == Rational(1))
    throw DomainError(
        "theta=1 is rejected: the homotopy family degenerates to (1-q)*E0, "
        "which never reaches the full equation at q=1");
  if (th < Rational(0) || th > Rational(1)) throw DomainError("theta must lie in [0, 1)");
}

Expr assembled_series(ch::Case c, SolutionForm form) {
  if (!ch::has_builtin_solution(c))
    throw DomainError("no built-in homotopy series for " + ch::case_name(c));
  if (form == SolutionForm::Reported) return ch::reported_display(c);
  return ch::homotopy_solution(c).assembled;
}

Expr residual_expr(const Expr& e0, const Expr& e1, const Expr& assembled) {
  return substitute_dependent(e0, assembled) +
         param("eps") * substitute_dependent(e1, assembled);
}

// Replaces the point's symbols by constants, leaving theta (and anything
// unknown, caught later) in place.
Expr bind_point(const Expr& e, const EvalPoint& p) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      if (a.kind == AtomKind::Indep) return Expr::constant(a.name == "x" ? p.x : p.t);
      if (a.kind == AtomKind::Param) {
        if (a.name == "eps") return Expr::constant(p.eps);
        if (a.name == "q") return Expr::constant(p.q);
        if (a.name == "a") return Expr::constant(p.a);
      }
      return e;
    }
    case ExprKind::Sum: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(bind_point(k, p));
      return Expr::sum(std::move(kids));
    }
    case ExprKind::Product: {
      std::vector<Expr> kids;
      for (const auto& k : e.operands()) kids.push_back(bind_point(k, p));
      return Expr::product(std::move(kids));
    }
    case ExprKind::Power:
      return Expr::pow(bind_point(e.base(), p), e.exponent());
  }
  return e;
}

std::vector<Rational> dense_theta_poly(const NormalForm& nf, const std::vector<NormalForm::Term>& terms,
                                       int theta_id) {
  std::vector<Rational> out;
  for (const auto& t : terms) {
    int deg = 0;
    for (const auto& [id, exp] : t.mono) {
      if (id != theta_id)
        throw DomainError("point leaves a symbol unbound in the residual: " +
                          nf.atoms()[static_cast<size_t>(id)].spelling());
      deg = exp;
    }
    if (static_cast<size_t>(deg) >= out.size()) out.resize(static_cast<size_t>(deg) + 1, Rational(0));
    out[static_cast<size_t>(deg)] = t.coeff;
  }
  if (out.empty()) out.push_back(Rational(0));
  return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Rational> theta_grid(const Rational& theta_min, const Rational& theta_max,
                                 const Rational& step) {
  if (theta_min < Rational(0) || !(theta_min < theta_max) || !(theta_max < Rational(1)))
    throw DomainError("need 0 <= theta_min < theta_max < 1");
  if (!(step > Rational(0))) throw DomainError("step must be positive");
  std::vector<Rational> grid;
  for (Rational th = theta_min; !(th > theta_max); th += step) grid.push_back(th);
  return grid;
}

std::string sanitized(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

// Fixed two-decimal rendering of a nonnegative coordinate, deterministic.
std::string svg_num(const Rational& v) {
  Rational scaled = v * Rational(100) + Rational(1, 2);
  Int whole = numerator(scaled) / denominator(scaled);  // floor for nonnegative
  Int ip = whole / 100, fp = whole % 100;
  std::string frac = fp.str();
  if (frac.size() < 2) frac.insert(frac.begin(), 2 - frac.size(), '0');
  return ip.str() + "." + frac;
}

}  // namespace

const std::string& form_name(SolutionForm f) {
  static const std::string names[] = {"reported", "engine"};
  return names[f == SolutionForm::Reported ? 0 : 1];
}

std::optional<SolutionForm> form_from_name(const std::string& name) {
  if (name == "reported") return SolutionForm::Reported;
  if (name == "engine") return SolutionForm::Engine;
  return std::nullopt;
}

Rational residual(ch::Case c, const EvalPoint& p, SolutionForm form) {
  check_theta(p.theta);
  auto pde = ch::pde(c);
  Expr R = residual_expr(pde.e0, pde.e1, assembled_series(c, form));
  EvalContext ctx;
  ctx.values = {{Atom::indep(0), p.x},         {Atom::indep(1), p.t},
                {Atom::param("eps"), p.eps},   {Atom::param("q"), p.q},
                {Atom::param("theta"), p.theta}, {Atom::param("a"), p.a}};
  return eval_exact(R, ctx);
}

ThetaResidual::ThetaResidual(ch::Case c, const EvalPoint& base, SolutionForm form)
    : ThetaResidual(ch::pde(c).e0, ch::pde(c).e1, assembled_series(c, form), base) {}

ThetaResidual::ThetaResidual(const Expr& e0, const Expr& e1, const Expr& assembled,
                             const EvalPoint& base) {
  NormalForm nf = normalize(bind_point(residual_expr(e0, e1, assembled), base));
  int theta_id = -1;
  for (size_t i = 0; i < nf.atoms().size(); ++i) {
    const Atom& a = nf.atoms()[i];
    if (a.kind == AtomKind::Param && a.name == "theta") theta_id = static_cast<int>(i);
  }
  num_ = dense_theta_poly(nf, nf.num_terms(), theta_id);
  den_ = dense_theta_poly(nf, nf.den_terms(), theta_id);
}

Rational ThetaResidual::operator()(const Rational& theta) const {
  check_theta(theta);
  Rational d = horner(den_, theta);
  if (d == Rational(0))
    throw PoleError("residual denominator vanishes at theta = " + rational_to_string(theta));
  return horner(num_, theta) / d;
}

Sweep sweep(const ThetaResidual& f, const Rational& theta_min, const Rational& theta_max,
            const Rational& step, bool parallel) {
  auto grid = theta_grid(theta_min, theta_max, step);
  Sweep s;
  s.rows.resize(grid.size());
  auto fill = [&](size_t i) {
    SweepRow& row = s.rows[i];
    row.theta = grid[i];
    try {
      row.residual = f(grid[i]);
      row.ok = true;
    } catch (const Error& ex) {
      row.ok = false;
      row.note = ex.what();
    }
  };
#ifdef HOMSYM_HAVE_OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
      fill(static_cast<size_t>(i));
    return s;
  }
#else
  (void)parallel;
#endif
  for (size_t i = 0; i < grid.size(); ++i) fill(i);
  return s;
}

Sweep sweep(ch::Case c, const EvalPoint& base, const Rational& theta_min,
            const Rational& theta_max, const Rational& step, SolutionForm form, bool parallel) {
  return sweep(ThetaResidual(c, base, form), theta_min, theta_max, step, parallel);
}

std::string to_csv(const Sweep& s) {
  std::ostringstream out;
  out << "theta,residual,abs_residual\n";
  for (const auto& row : s.rows) {
    out << to_scientific(row.theta, 17) << ",";
    if (row.ok)
      out << to_scientific(row.residual, 17) << "," << to_scientific(rabs(row.residual), 17);
    else
      out << "error," << sanitized(row.note);
    out << "\n";
  }
  return out.str();
}

void write_csv(const Sweep& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << to_csv(s);
  if (!f) throw IoError("failed writing " + path);
}

std::string to_svg(const Sweep& s) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& row : s.rows)
    if (row.ok) pts.emplace_back(row.theta, rabs(row.residual));
  if (pts.size() < 2) throw DomainError("sweep chart needs at least two valid rows");

  const Rational W(880), H(560), M(60);
  Rational xmin = pts.front().first, xmax = pts.back().first;
  Rational ymin = pts.front().second, ymax = ymin;
  for (const auto& p : pts) {
    if (p.second < ymin) ymin = p.second;
    if (p.second > ymax) ymax = p.second;
  }
  Rational xspan = xmax - xmin, yspan = ymax - ymin;
  if (yspan == Rational(0)) yspan = Rational(1);
  auto X = [&](const Rational& v) { return M + (v - xmin) / xspan * (W - 2 * M); };
  auto Y = [&](const Rational& v) { return H - M - (v - ymin) / yspan * (H - 2 * M); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 880 560\">\n"
      << "<rect width=\"880\" height=\"560\" fill=\"white\"/>\n"
      << "<line x1=\"60\" y1=\"500\" x2=\"820\" y2=\"500\" stroke=\"black\"/>\n"
      << "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"500\" stroke=\"black\"/>\n"
      << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out << " ";
    out << svg_num(X(pts[i].first)) << "," << svg_num(Y(pts[i].second));
  }
  out << "\"/>\n";
  out << "<text x=\"60\" y=\"520\" font-family=\"monospace\" font-size=\"12\">theta="
      << to_scientific(xmin, 4) << "</text>\n"
      << "<text x=\"740\" y=\"520\" font-family=\"monospace\" font-size=\"12\">"
      << to_scientific(xmax, 4) << "</text>\n"
      << "<text x=\"4\" y=\"500\" font-family=\"monospace\" font-size=\"12\">"
      << to_scientific(ymin, 3) << "</text>\n"
      << "<text x=\"4\" y=\"64\" font-family=\"monospace\" font-size=\"12\">"
      << to_scientific(ymax, 3) << "</text>\n"
      << "<text x=\"380\" y=\"545\" font-family=\"monospace\" font-size=\"12\">|residual| over theta</text>\n"
      << "</svg>\n";
  return out.str();
}

void write_svg(const Sweep& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << to_svg(s);
  if (!f) throw IoError("failed writing " + path);
}

OptResult optimize_theta(const ThetaResidual& f, const Rational& theta_min,
                         const Rational& theta_max, const Rational& coarse_step,
                         const Rational& width) {
  auto grid = theta_grid(theta_min, theta_max, coarse_step);

  struct Best {
    bool set = false;
    Rational theta, absr, r;
  } best;
  auto consider = [&](const Rational& th, const Rational& r) {
    Rational a = rabs(r);
    if (!best.set || a < best.absr || (a == best.absr && th < best.theta)) {
      best = {true, th, a, r};
    }
  };
  auto feval = [&](const Rational& th) -> std::optional<Rational> {
    try {
      Rational r = f(th);
      consider(th, r);
      return r;
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  size_t best_idx = 0;
  std::optional<Rational> best_grid;
  for (size_t i = 0; i < grid.size(); ++i) {
    auto r = feval(grid[i]);
    if (r && (!best_grid || rabs(*r) < *best_grid)) {
      best_idx = i;
      best_grid = rabs(*r);
    }
  }
  if (!best_grid) throw DomainError("no valid residual on the coarse grid");

  Rational a = best_idx > 0 ? grid[best_idx - 1] : theta_min;
  Rational b = best_idx + 1 < grid.size() ? grid[best_idx + 1] : grid.back();
  const Rational ratio(46368, 75025);  // descending Fibonacci quotient
  Rational c = b - ratio * (b - a), d = a + ratio * (b - a);
  auto fc = feval(c), fd = feval(d);
  int iters = 0;
  while (b - a > width && iters < 200) {
    ++iters;
    bool keep_left;
    if (fc && fd)
      keep_left = rabs(*fc) <= rabs(*fd);  // ties shrink toward smaller theta
    else if (fc)
      keep_left = true;
    else if (fd)
      keep_left = false;
    else
      keep_left = true;
    if (keep_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = feval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = feval(d);
    }
  }
  feval((a + b) / 2);

  OptResult res;
  res.theta = best.theta;
  res.residual = best.r;
  res.grid_points = static_cast<int>(grid.size());
  res.refine_iterations = iters;
  return res;
}

OptResult optimize_theta(ch::Case c, const EvalPoint& base, SolutionForm form,
                         const Rational& theta_min, const Rational& theta_max,
                         const Rational& coarse_step, const Rational& width) {
  return optimize_theta(ThetaResidual(c, base, form), theta_min, theta_max, coarse_step, width);
}

}  // namespace homsym::num

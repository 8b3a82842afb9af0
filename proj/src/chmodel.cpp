#include "homsym/chmodel.hpp"

#include "homsym/errors.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"

namespace homsym::ch {

namespace {

Expr parse(const std::string& text) { return parse_expression(text); }

const std::vector<std::string>& inv_u_lines() {
  static const std::vector<std::string> lines = {
      "1/(a^2*t - a*x)",
      "3*eps*q*(theta-1)/(a^2*(x-a*t)^4)",
      "3*eps*q^2*(theta-1)*(5*a*theta*(a*t-x)^3 + 129*eps*(theta-1))/(5*a^3*(a*t-x)^7)",
      "3*eps*q^3*(theta-1)*(10*a^2*theta^2*(x-a*t)^6 + 516*eps*theta*a*(theta-1)*(a*t-x)^3"
      " + 17091*eps^2*(theta-1)^2)/(10*a^4*(x-a*t)^10)"};
  return lines;
}

// Linear-mobility display with the order-3 sign that matches the hierarchy
// solution (the transform of builtin_asm_solution).
const std::vector<std::string>& linear_u_lines() {
  static const std::vector<std::string> lines = {
      "x^2/(6*t)",
      "-eps*q*(theta-1)/x^2",
      "-eps*q^2*(theta-1)*(390*eps*(theta-1)*t + 13*theta*x^4)/(13*x^6)",
      "eps*q^3*(theta-1)*(-603720*eps^2*(theta-1)^2*t^2 - 5460*eps*theta*(theta-1)*t*x^4"
      " - 91*theta^2*x^8)/(91*x^10)",
      "eps*q^4*(theta-1)*((-10460403720*eps^3*(theta-1)^3*t^3"
      " - 52523640*eps^2*theta*(theta-1)^2*t^2*x^4)/(2639*x^14)"
      " - (237510*eps*theta^2*(theta-1)*t*x^8 + 2639*theta^3*x^12)/(2639*x^14))"};
  return lines;
}

// Linear-mobility display as originally reported: the 603720 and 52523640
// terms carry the opposite sign (the order-3 slip pushed through the
// transform). The reference residual values trace back to this form.
const std::vector<std::string>& linear_u_reported_lines() {
  static const std::vector<std::string> lines = {
      "x^2/(6*t)",
      "-eps*q*(theta-1)/x^2",
      "-eps*q^2*(theta-1)*(390*eps*(theta-1)*t + 13*theta*x^4)/(13*x^6)",
      "eps*q^3*(theta-1)*(603720*eps^2*(theta-1)^2*t^2 - 5460*eps*theta*(theta-1)*t*x^4"
      " - 91*theta^2*x^8)/(91*x^10)",
      "eps*q^4*(theta-1)*((-10460403720*eps^3*(theta-1)^3*t^3"
      " + 52523640*eps^2*theta*(theta-1)^2*t^2*x^4)/(2639*x^14)"
      " - (237510*eps*theta^2*(theta-1)*t*x^8 + 2639*theta^3*x^12)/(2639*x^14))"};
  return lines;
}

Expr assemble_lines(const std::vector<std::string>& lines) {
  std::vector<Expr> terms;
  terms.reserve(lines.size());
  for (const auto& line : lines) terms.push_back(parse_expression(line));
  return Expr::sum(std::move(terms));
}

}  // namespace

const std::string& case_name(Case c) {
  static const std::string names[] = {"ch-generic", "ch-inv-u", "ch-linear-u"};
  switch (c) {
    case Case::Generic:
      return names[0];
    case Case::InvU:
      return names[1];
    case Case::LinearU:
      return names[2];
  }
  return names[0];
}

std::optional<Case> case_from_name(const std::string& name) {
  for (Case c : {Case::Generic, Case::InvU, Case::LinearU})
    if (case_name(c) == name) return c;
  return std::nullopt;
}

series::PerturbedPDE pde(Case c) {
  series::PerturbedPDE p;
  p.name = case_name(c);
  p.e0 = parse("d(u,t) + d(F(u)*d(u,x),x)");
  p.e1 = parse("d(u,x,4)");
  auto fs = closed_forms(c);
  if (!fs.empty()) p.e0 = resolve_funcs(p.e0, fs);
  return p;
}

std::vector<ClosedForm> closed_forms(Case c) {
  switch (c) {
    case Case::Generic:
      return {};
    case Case::InvU:
      return {{"F", Expr::integer(1) / dep_u()}};
    case Case::LinearU:
      return {{"F", dep_u()}};
  }
  return {};
}

bool has_builtin_solution(Case c) { return c != Case::Generic; }

bridge::SeriesSolution builtin_asm_solution(Case c) {
  if (!has_builtin_solution(c)) throw DomainError("no built-in series solution for this case");
  bridge::SeriesSolution sol;
  sol.flavor = bridge::SolutionFlavor::Asm;
  sol.series_param = "eps";
  if (c == Case::InvU) {
    sol.coefficients = {parse("1/(a*(a*t-x))"), parse("-3/(a^2*(a*t-x)^4)"),
                        parse("774/(10*a^3*(a*t-x)^7)"), parse("-51273/(10*a^4*(a*t-x)^10)")};
  } else {
    // Order 3 is stored with the sign the hierarchy forces (equation 3 gives
    // 14*c3 = 92880). The originally reported series flips it, yet its own
    // order-4 value certifies the + sign: equation 4 reads
    // 29*c4 + 17316*c3 + 70200 = 0, and only c3 = +46440/7 yields the
    // reported c4 = -804646440/203. See reported_display for the verbatim
    // form kept as the residual-reproduction target.
    sol.coefficients = {parse("x^2/(6*t)"), parse("1/x^2"), parse("-30*t/x^6"),
                        parse("46440*t^2/(7*x^10)"), parse("-804646440*t^3/(203*x^14)")};
  }
  return sol;
}

HomotopySolution homotopy_solution(Case c, const std::optional<Rational>& theta) {
  auto base = builtin_asm_solution(c);
  int order = static_cast<int>(base.coefficients.size()) - 1;
  auto map = bridge::build_map(bridge::MapKind::Theorem1, order);
  HomotopySolution out;
  out.solution = bridge::apply_map_to_solution(map, base);
  if (theta) {
    Bindings b;
    b.params.emplace_back("theta", Expr::constant(*theta));
    for (auto& coeff : out.solution.coefficients) coeff = substitute(coeff, b);
  }
  out.assembled = bridge::assemble(out.solution);
  return out;
}

Expr solution_display(Case c) {
  switch (c) {
    case Case::InvU:
      return assemble_lines(inv_u_lines());
    case Case::LinearU:
      return assemble_lines(linear_u_lines());
    case Case::Generic:
      break;
  }
  throw DomainError("no series display for this case");
}

Expr reported_display(Case c) {
  switch (c) {
    case Case::InvU:
      return assemble_lines(inv_u_lines());
    case Case::LinearU:
      return assemble_lines(linear_u_reported_lines());
    case Case::Generic:
      break;
  }
  throw DomainError("no series display for this case");
}

GoldenReport hierarchy_golden_check(int order) {
  if (order < 0 || order > 3) throw DomainError("golden lines cover orders 0..3");
  static const std::vector<std::string> lines = {
      "d(u0,t) + d(F(u0)*d(u0,x),x)",
      "d(u1,t) + d(F(u0)*u1,x,2) + eps*(1-theta)*d(u0,x,4)",
      "2*d(u2,t) + d(F'(u0)*u1^2 + 2*F(u0)*u2,x,2)"
      " + 2*eps*(1-theta)*(d(u1,x,4) + theta*d(u0,x,4))",
      "6*d(u3,t) + d(F''(u0)*u1^3 + 6*F'(u0)*u1*u2 + 6*F(u0)*u3,x,2)"
      " + 6*eps*(1-theta)*(d(u2,x,4) + theta*d(u1,x,4) + theta^2*d(u0,x,4))"};
  GoldenReport rep;
  rep.order = order;
  rep.ok = true;
  auto re = series::rearrange(series::generate_ahsm_raw(pde(Case::Generic), order));
  for (int k = 0; k <= order; ++k) {
    rep.expected.push_back(parse(lines[static_cast<size_t>(k)]));
    rep.generated.push_back(re.hierarchy.equations[static_cast<size_t>(k)]);
    if (!equal_mod_normal(rep.expected.back(), rep.generated.back())) {
      rep.ok = false;
      rep.mismatched.push_back(k);
    }
  }
  return rep;
}

}  // namespace homsym::ch

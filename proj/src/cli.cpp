#include "homsym/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "homsym/bridge.hpp"
#include "homsym/calculus.hpp"
#include "homsym/chmodel.hpp"
#include "homsym/errors.hpp"
#include "homsym/fdb.hpp"
#include "homsym/model_file.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/numlab.hpp"
#include "homsym/parser.hpp"
#include "homsym/random_pde.hpp"
#include "homsym/rational.hpp"
#include "homsym/series.hpp"

namespace homsym::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Latex };

Rational rat_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw DomainError(std::string(flag) + ": " + e.what());
  }
}

std::string nf_str(const Expr& e) { return normalize(e).str(); }
std::string nf_latex(const Expr& e) { return normalize(e).latex(); }

// Options shared by every command that names an equation: one of the
// built-in cases or a model file.
struct PdeChoice {
  std::string case_name = "ch-generic";
  std::string model_path;

  void attach(CLI::App* cmd) {
    auto* c = cmd->add_option("--case", case_name,
                              "built-in case: ch-generic, ch-inv-u, ch-linear-u");
    auto* m = cmd->add_option("--model", model_path, "model file path");
    c->excludes(m);
  }

  series::PerturbedPDE resolve() const {
    if (!model_path.empty()) return model::load_model(model_path).pde();
    auto c = ch::case_from_name(case_name);
    if (!c) throw DomainError("unknown case '" + case_name + "'");
    return ch::pde(*c);
  }

  ch::Case builtin() const {
    if (!model_path.empty())
      throw DomainError("this command works on the built-in cases, not model files");
    auto c = ch::case_from_name(case_name);
    if (!c) throw DomainError("unknown case '" + case_name + "'");
    return *c;
  }
};

struct FormatChoice {
  std::string value = "text";
  void attach(CLI::App* cmd) {
    cmd->add_option("--format", value, "output format: text, json, latex")
        ->check(CLI::IsMember({"text", "json", "latex"}));
  }
  Format get() const {
    if (value == "json") return Format::Json;
    if (value == "latex") return Format::Latex;
    return Format::Text;
  }
};

// Evaluation-point flags for the residual family of commands.
struct PointFlags {
  std::string x = "1", t = "1/10", eps = "1/100", q = "1", a = "1";
  std::string form = "reported";

  void attach(CLI::App* cmd) {
    cmd->add_option("--x", x, "x value (exact rational)");
    cmd->add_option("--t", t, "t value");
    cmd->add_option("--eps", eps, "perturbation strength");
    cmd->add_option("--q", q, "homotopy parameter (1 = full equation)");
    cmd->add_option("--a", a, "wave speed, reciprocal-mobility case");
    cmd->add_option("--solution-form", form,
                    "series the residual is taken of: reported, engine")
        ->check(CLI::IsMember({"reported", "engine"}));
  }

  num::EvalPoint point() const {
    num::EvalPoint p;
    p.x = rat_flag(x, "--x");
    p.t = rat_flag(t, "--t");
    p.eps = rat_flag(eps, "--eps");
    p.q = rat_flag(q, "--q");
    p.a = rat_flag(a, "--a");
    return p;
  }

  num::SolutionForm solution_form() const {
    auto f = num::form_from_name(form);
    if (!f) throw DomainError("unknown solution form '" + form + "'");
    return *f;
  }
};

struct VerifyTally {
  std::ostream& out;
  int failures = 0;
  void line(bool ok, const std::string& what) {
    out << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
    if (!ok) ++failures;
  }
  int finish(const std::string& suite) {
    out << (failures == 0 ? "VERIFIED" : "FAILED") << "  " << suite;
    if (failures > 0) out << "  (" << failures << " failing)";
    out << "\n";
    return failures == 0 ? 0 : 1;
  }
};

series::Hierarchy make_hierarchy(const series::PerturbedPDE& pde, const std::string& kind,
                                 int order, bool paper_form) {
  if (kind == "asm") return series::generate_asm(pde, order, paper_form);
  if (kind == "ahsm-raw") return series::generate_ahsm_raw(pde, order, paper_form);
  if (kind == "ahsm")
    return series::rearrange(series::generate_ahsm_raw(pde, order, paper_form)).hierarchy;
  throw DomainError("unknown hierarchy kind '" + kind + "'");
}

const char* kind_name(series::HierarchyKind k) {
  switch (k) {
    case series::HierarchyKind::Asm: return "asm";
    case series::HierarchyKind::AhsmRaw: return "ahsm-raw";
    case series::HierarchyKind::AhsmRearranged: return "ahsm";
  }
  return "?";
}

void print_hierarchy(std::ostream& out, const series::Hierarchy& h, Format fmt) {
  if (fmt == Format::Json) {
    json j;
    j["kind"] = kind_name(h.kind);
    j["order"] = h.order;
    j["paper_form"] = h.paper_form;
    j["equations"] = json::array();
    for (const auto& eq : h.equations) j["equations"].push_back(nf_str(eq));
    out << j.dump(2) << "\n";
    return;
  }
  for (size_t i = 0; i < h.equations.size(); ++i) {
    if (fmt == Format::Latex)
      out << nf_latex(h.equations[i]) << " = 0\n";
    else
      out << i << ": " << nf_str(h.equations[i]) << " = 0\n";
  }
}

Expr plug_solution(const Expr& equation, const bridge::SeriesSolution& sol) {
  Bindings b;
  for (size_t l = 0; l < sol.coefficients.size(); ++l)
    b.coeffs.push_back({CoeffFamily::Plain, static_cast<int>(l), sol.coefficients[l]});
  return substitute(equation, b);
}

// --- command bodies -------------------------------------------------------

int cmd_hierarchy(std::ostream& out, const PdeChoice& pc, const FormatChoice& fc,
                  const std::string& kind, int order, bool paper_form) {
  auto h = make_hierarchy(pc.resolve(), kind, order, paper_form);
  print_hierarchy(out, h, fc.get());
  return 0;
}

int cmd_verify_theorem1(std::ostream& out, const PdeChoice& pc, int order) {
  auto report = bridge::verify_theorem1(pc.resolve(), order);
  VerifyTally tally{out};
  for (const auto& oc : report.orders) {
    std::ostringstream what;
    what << "order " << oc.l << ": theta stage " << (oc.theta_stage_ok ? "ok" : "BROKEN")
         << ", scaling stage " << (oc.scaling_stage_ok ? "ok" : "BROKEN") << ", one-shot "
         << (oc.direct_ok ? "ok" : "BROKEN");
    tally.line(oc.theta_stage_ok && oc.scaling_stage_ok && oc.direct_ok, what.str());
  }
  return tally.finish("bridging transformation, orders 0.." + std::to_string(order));
}

int cmd_verify_lemma2(std::ostream& out, const PdeChoice& pc, int order) {
  auto pde = pc.resolve();
  VerifyTally tally{out};
  for (int n = 1; n <= order; ++n) {
    auto rep = bridge::verify_lemma2(pde, n);
    std::ostringstream what;
    what << "n = " << n << ": lower-chain weights";
    for (const auto& [i, mu] : rep.coefficients) what << "  (" << i << ", " << nf_str(mu) << ")";
    tally.line(rep.ok, what.str());
  }
  return tally.finish("derivative-chain identity, n = 1.." + std::to_string(order));
}

int cmd_verify_lemma1(std::ostream& out, const PdeChoice& pc, int order, int random_count,
                      std::uint64_t seed) {
  VerifyTally tally{out};
  auto check_pde = [&](const series::PerturbedPDE& pde) {
    auto asm_h = series::generate_asm(pde, order);
    auto ahsm = series::rearrange(series::generate_ahsm_raw(pde, order)).hierarchy;
    for (int i = 1; i <= order; ++i) {
      for (const auto* h : {&asm_h, &ahsm}) {
        auto rep = series::check_linearity(*h, i);
        std::ostringstream what;
        what << pde.name << ", " << kind_name(h->kind) << " equation " << i
             << " affine-linear in its newest coefficient";
        if (!rep.affine_linear) what << " (witness: " << rep.witness << ")";
        tally.line(rep.affine_linear, what.str());
      }
    }
  };
  check_pde(pc.resolve());
  for (int k = 0; k < random_count; ++k)
    check_pde(series::random_polynomial_pde(seed + static_cast<std::uint64_t>(k)));
  return tally.finish("hierarchy linearity, orders 1.." + std::to_string(order));
}

int cmd_verify_rearrange(std::ostream& out, const PdeChoice& pc, int order) {
  auto pde = pc.resolve();
  auto raw = series::generate_ahsm_raw(pde, order);
  auto re = series::rearrange(raw);
  VerifyTally tally{out};
  Expr th = param("theta");
  for (int i = 0; i <= order; ++i) {
    const auto& cert = re.certificate[static_cast<size_t>(i)];
    // The certificate must re-assemble the output from the raw equations...
    std::vector<Expr> terms = {raw.equations[static_cast<size_t>(i)]};
    for (const auto& term : cert)
      terms.push_back(term.multiplier * raw.equations[static_cast<size_t>(term.source)]);
    bool readd = equal_mod_normal(re.hierarchy.equations[static_cast<size_t>(i)],
                                  Expr::sum(std::move(terms)));
    tally.line(readd, "order " + std::to_string(i) + ": certificate re-adds to the output");
    // ...with the closed-form multipliers (i!/k!) theta^(i-k)...
    bool mults = true;
    for (const auto& term : cert) {
      Expr want = Expr::constant(Rational(factorial(i)) / Rational(factorial(term.source))) *
                  Expr::pow(th, i - term.source);
      if (!equal_mod_normal(term.multiplier, want)) mults = false;
    }
    tally.line(mults, "order " + std::to_string(i) + ": multipliers are (i!/k!)*theta^(i-k)");
    // ...and the result must carry the perturbation chain with weights
    // (i!/k!) theta^(i-1-k) on the k-th derivative block.
    std::vector<Expr> chain = {series::q_derivative_at0(pde.e0, i)};
    Expr lam = param("eps") * (Expr::integer(1) - th);
    for (int k = 0; k < i; ++k)
      chain.push_back(lam *
                      Expr::constant(Rational(factorial(i)) / Rational(factorial(k))) *
                      Expr::pow(th, i - 1 - k) * series::q_derivative_at0(pde.e1, k));
    bool shape = equal_mod_normal(re.hierarchy.equations[static_cast<size_t>(i)],
                                  Expr::sum(std::move(chain)));
    tally.line(shape, "order " + std::to_string(i) +
                          ": perturbation chain carries (i!/k!)*theta^(i-1-k)");
  }
  return tally.finish("rearrangement, orders 0.." + std::to_string(order));
}

int cmd_verify_solutions(std::ostream& out, const std::string& which) {
  VerifyTally tally{out};
  std::vector<ch::Case> cases;
  if (which == "both")
    cases = {ch::Case::InvU, ch::Case::LinearU};
  else {
    auto c = ch::case_from_name(which);
    if (!c || !ch::has_builtin_solution(*c))
      throw DomainError("verify solutions expects ch-inv-u, ch-linear-u, or both");
    cases = {*c};
  }
  for (ch::Case c : cases) {
    const auto& name = ch::case_name(c);
    auto sol = ch::builtin_asm_solution(c);
    int order = static_cast<int>(sol.coefficients.size()) - 1;
    auto h = series::generate_asm(ch::pde(c), order);
    for (int i = 0; i <= order; ++i) {
      bool ok = is_zero(plug_solution(h.equations[static_cast<size_t>(i)], sol));
      tally.line(ok, name + ": series satisfies hierarchy equation " + std::to_string(i));
    }
    bool disp = equal_mod_normal(ch::homotopy_solution(c).assembled, ch::solution_display(c));
    tally.line(disp, name + ": transformed series equals the hand-entered display");
    if (!equal_mod_normal(ch::reported_display(c), ch::solution_display(c)))
      out << "note  " << name
          << ": the originally reported display differs in two sign-flipped terms; "
             "reference residuals use it verbatim (--solution-form reported)\n";
  }
  return tally.finish("built-in series solutions");
}

int cmd_verify_golden(std::ostream& out, int order) {
  auto rep = ch::hierarchy_golden_check(order);
  VerifyTally tally{out};
  for (int i = 0; i <= rep.order; ++i) {
    bool ok = std::find(rep.mismatched.begin(), rep.mismatched.end(), i) == rep.mismatched.end();
    tally.line(ok, "generated homotopy equation " + std::to_string(i) +
                       " matches the displayed line");
  }
  return tally.finish("generic-model golden hierarchy");
}

int cmd_verify_fdb(std::ostream& out, const PdeChoice& pc, int order, int random_count,
                   std::uint64_t seed) {
  VerifyTally tally{out};
  auto check_pde = [&](const series::PerturbedPDE& pde) {
    for (int n = 1; n <= order; ++n) {
      for (const auto* side : {&pde.e0, &pde.e1}) {
        Expr chain = fdb::qderiv_at0(*side, n);
        Expr direct = Expr::constant(Rational(factorial(n))) *
                      series::taylor_coefficients(*side, "q", n)[static_cast<size_t>(n)];
        std::ostringstream what;
        what << pde.name << ", " << (side == &pde.e0 ? "E0" : "E1") << ", n = " << n
             << ": chain rule equals series extraction";
        tally.line(equal_mod_normal(chain, direct), what.str());
      }
    }
  };
  check_pde(pc.resolve());
  for (int k = 0; k < random_count; ++k)
    check_pde(series::random_polynomial_pde(seed + static_cast<std::uint64_t>(k)));
  return tally.finish("derivative oracle, n = 1.." + std::to_string(order));
}

bridge::MapKind map_from_name(const std::string& name) {
  if (name == "theorem1") return bridge::MapKind::Theorem1;
  if (name == "theta-only") return bridge::MapKind::ThetaOnly;
  if (name == "scaling") return bridge::MapKind::Scaling;
  if (name == "operator-alt") return bridge::MapKind::OperatorAlt;
  throw DomainError("unknown map '" + name + "'");
}

int cmd_transform(std::ostream& out, const PdeChoice& pc, const FormatChoice& fc,
                  const std::string& map_name, bool invert) {
  ch::Case c = pc.builtin();
  auto sol = ch::builtin_asm_solution(c);
  auto m = bridge::build_map(map_from_name(map_name),
                             static_cast<int>(sol.coefficients.size()) - 1);
  if (invert) m = bridge::invert_map(m);
  auto res = bridge::apply_map_to_solution(m, sol);
  if (fc.get() == Format::Json) {
    json j;
    j["case"] = ch::case_name(c);
    j["map"] = map_name;
    j["inverted"] = invert;
    j["series_param"] = res.series_param;
    j["coefficients"] = json::array();
    for (const auto& e : res.coefficients) j["coefficients"].push_back(nf_str(e));
    j["assembled"] = nf_str(bridge::assemble(res));
    out << j.dump(2) << "\n";
    return 0;
  }
  bool latex = fc.get() == Format::Latex;
  for (size_t l = 0; l < res.coefficients.size(); ++l)
    out << "u" << l << " = " << (latex ? nf_latex(res.coefficients[l]) : nf_str(res.coefficients[l]))
        << "\n";
  Expr assembled = bridge::assemble(res);
  out << "series = " << (latex ? nf_latex(assembled) : nf_str(assembled)) << "\n";
  return 0;
}

int cmd_residual(std::ostream& out, const PdeChoice& pc, const FormatChoice& fc,
                 const PointFlags& pf, const std::string& theta) {
  num::EvalPoint p = pf.point();
  p.theta = rat_flag(theta, "--theta");
  Rational r = num::residual(pc.builtin(), p, pf.solution_form());
  Rational ar = r < Rational(0) ? -r : r;
  if (fc.get() == Format::Json) {
    json j;
    j["case"] = ch::case_name(pc.builtin());
    j["solution_form"] = num::form_name(pf.solution_form());
    j["theta"] = rational_to_string(p.theta);
    j["residual"] = to_scientific(r);
    j["abs_residual"] = to_scientific(ar);
    j["residual_exact"] = rational_to_string(r);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "residual     = " << to_scientific(r) << "\n";
  out << "|residual|   = " << to_scientific(ar) << "\n";
  out << "exact value  = " << rational_to_string(r) << "\n";
  return 0;
}

int cmd_sweep(std::ostream& out, const PdeChoice& pc, const PointFlags& pf,
              const std::string& theta_min, const std::string& theta_max,
              const std::string& step, const std::string& out_path,
              const std::string& svg_path, bool serial) {
  auto s = num::sweep(pc.builtin(), pf.point(), rat_flag(theta_min, "--theta-min"),
                      rat_flag(theta_max, "--theta-max"), rat_flag(step, "--step"),
                      pf.solution_form(), !serial);
  if (!svg_path.empty()) num::write_svg(s, svg_path);
  if (out_path.empty())
    out << num::to_csv(s);
  else
    num::write_csv(s, out_path);
  return 0;
}

int cmd_optimize(std::ostream& out, const PdeChoice& pc, const FormatChoice& fc,
                 const PointFlags& pf, const std::string& theta_min,
                 const std::string& theta_max, const std::string& coarse_step,
                 const std::string& width) {
  auto res = num::optimize_theta(pc.builtin(), pf.point(), pf.solution_form(),
                                 rat_flag(theta_min, "--theta-min"),
                                 rat_flag(theta_max, "--theta-max"),
                                 rat_flag(coarse_step, "--coarse-step"),
                                 rat_flag(width, "--width"));
  Rational ar = res.residual < Rational(0) ? -res.residual : res.residual;
  if (fc.get() == Format::Json) {
    json j;
    j["theta"] = rational_to_string(res.theta);
    j["theta_scientific"] = to_scientific(res.theta);
    j["residual"] = to_scientific(res.residual);
    j["abs_residual"] = to_scientific(ar);
    j["grid_points"] = res.grid_points;
    j["refine_iterations"] = res.refine_iterations;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "theta*       = " << rational_to_string(res.theta) << "  (" << to_scientific(res.theta)
      << ")\n";
  out << "residual     = " << to_scientific(res.residual) << "\n";
  out << "|residual|   = " << to_scientific(ar) << "\n";
  out << "searched " << res.grid_points << " grid points, " << res.refine_iterations
      << " refinement iterations\n";
  return 0;
}

int cmd_operator_check(std::ostream& out, const FormatChoice& fc, int order,
                       const std::string& map_name) {
  auto diffs = bridge::operator_diagnostic(order, map_from_name(map_name));
  if (fc.get() == Format::Json) {
    json j = json::array();
    for (const auto& d : diffs) {
      json row;
      row["order"] = d.l;
      row["forward"] = nf_str(d.forward);
      row["backward"] = nf_str(d.backward);
      j.push_back(row);
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "pushforward differences of the operator pair under the " << map_name
      << " map (diagnostic only, no pass/fail claim):\n";
  for (const auto& d : diffs) {
    out << "order " << d.l << ":\n";
    out << "  forward  = " << nf_str(d.forward) << "\n";
    out << "  backward = " << nf_str(d.backward) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"homotopy/perturbation hierarchy engine"};
  app.require_subcommand(1);
  std::function<int()> action;

  // hierarchy
  {
    auto* cmd = app.add_subcommand("hierarchy", "print a generated equation hierarchy");
    auto pc = std::make_shared<PdeChoice>();
    auto fc = std::make_shared<FormatChoice>();
    auto kind = std::make_shared<std::string>("ahsm");
    auto order = std::make_shared<int>(3);
    auto paper = std::make_shared<bool>(true);
    pc->attach(cmd);
    fc->attach(cmd);
    cmd->add_option("--kind", *kind, "asm, ahsm (rearranged), ahsm-raw")
        ->check(CLI::IsMember({"asm", "ahsm", "ahsm-raw"}));
    cmd->add_option("--order", *order, "highest order")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--paper-form,!--coeff-form", *paper,
                  "scale equation i by i! (default) or keep bare coefficients");
    cmd->callback([&action, &out, pc, fc, kind, order, paper] {
      action = [&out, pc, fc, kind, order, paper] {
        return cmd_hierarchy(out, *pc, *fc, *kind, *order, *paper);
      };
    });
  }

  // verify
  {
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);

    auto* t1 = verify->add_subcommand("theorem1", "bridging transformation, three routes");
    auto t1pc = std::make_shared<PdeChoice>();
    auto t1order = std::make_shared<int>(4);
    t1pc->attach(t1);
    t1->add_option("--order", *t1order)->check(CLI::NonNegativeNumber);
    t1->callback([&action, &out, t1pc, t1order] {
      action = [&out, t1pc, t1order] { return cmd_verify_theorem1(out, *t1pc, *t1order); };
    });

    auto* l2 = verify->add_subcommand("lemma2", "derivative-chain substitution identity");
    auto l2pc = std::make_shared<PdeChoice>();
    auto l2order = std::make_shared<int>(4);
    l2pc->attach(l2);
    l2->add_option("--order", *l2order)->check(CLI::PositiveNumber);
    l2->callback([&action, &out, l2pc, l2order] {
      action = [&out, l2pc, l2order] { return cmd_verify_lemma2(out, *l2pc, *l2order); };
    });

    auto* l1 = verify->add_subcommand("lemma1", "hierarchy equations are affine-linear");
    auto l1pc = std::make_shared<PdeChoice>();
    auto l1order = std::make_shared<int>(4);
    auto l1random = std::make_shared<int>(0);
    auto l1seed = std::make_shared<std::uint64_t>(1);
    l1pc->attach(l1);
    l1->add_option("--order", *l1order)->check(CLI::PositiveNumber);
    l1->add_option("--random", *l1random, "also check this many random polynomial equations")
        ->check(CLI::NonNegativeNumber);
    l1->add_option("--seed", *l1seed, "seed for the random equations");
    l1->callback([&action, &out, l1pc, l1order, l1random, l1seed] {
      action = [&out, l1pc, l1order, l1random, l1seed] {
        return cmd_verify_lemma1(out, *l1pc, *l1order, *l1random, *l1seed);
      };
    });

    auto* re = verify->add_subcommand("rearrange", "telescoping certificate and chain weights");
    auto repc = std::make_shared<PdeChoice>();
    auto reorder = std::make_shared<int>(5);
    repc->attach(re);
    re->add_option("--order", *reorder)->check(CLI::NonNegativeNumber);
    re->callback([&action, &out, repc, reorder] {
      action = [&out, repc, reorder] { return cmd_verify_rearrange(out, *repc, *reorder); };
    });

    auto* sol = verify->add_subcommand("solutions", "built-in series against their hierarchies");
    auto which = std::make_shared<std::string>("both");
    sol->add_option("--case", *which, "ch-inv-u, ch-linear-u, or both");
    sol->callback([&action, &out, which] {
      action = [&out, which] { return cmd_verify_solutions(out, *which); };
    });

    auto* gc = verify->add_subcommand("golden-ch", "generated hierarchy against displayed lines");
    auto gcorder = std::make_shared<int>(3);
    gc->add_option("--order", *gcorder)->check(CLI::NonNegativeNumber);
    gc->callback([&action, &out, gcorder] {
      action = [&out, gcorder] { return cmd_verify_golden(out, *gcorder); };
    });

    auto* fo = verify->add_subcommand("fdb-oracle", "chain-rule derivative against series route");
    auto fopc = std::make_shared<PdeChoice>();
    auto foorder = std::make_shared<int>(4);
    auto forandom = std::make_shared<int>(0);
    auto foseed = std::make_shared<std::uint64_t>(1);
    fopc->attach(fo);
    fo->add_option("--order", *foorder)->check(CLI::PositiveNumber);
    fo->add_option("--random", *forandom, "also check this many random polynomial equations")
        ->check(CLI::NonNegativeNumber);
    fo->add_option("--seed", *foseed, "seed for the random equations");
    fo->callback([&action, &out, fopc, foorder, forandom, foseed] {
      action = [&out, fopc, foorder, forandom, foseed] {
        return cmd_verify_fdb(out, *fopc, *foorder, *forandom, *foseed);
      };
    });
  }

  // transform
  {
    auto* cmd = app.add_subcommand("transform", "push a built-in series through a map");
    auto pc = std::make_shared<PdeChoice>();
    auto fc = std::make_shared<FormatChoice>();
    auto map = std::make_shared<std::string>("theorem1");
    auto invert = std::make_shared<bool>(false);
    pc->attach(cmd);
    fc->attach(cmd);
    cmd->add_option("--map", *map, "theorem1, theta-only, scaling, operator-alt")
        ->check(CLI::IsMember({"theorem1", "theta-only", "scaling", "operator-alt"}));
    cmd->add_flag("--invert", *invert, "apply the triangular inverse instead");
    cmd->callback([&action, &out, pc, fc, map, invert] {
      action = [&out, pc, fc, map, invert] {
        return cmd_transform(out, *pc, *fc, *map, *invert);
      };
    });
  }

  // residual
  {
    auto* cmd = app.add_subcommand("residual", "exact residual of a built-in series");
    auto pc = std::make_shared<PdeChoice>();
    auto fc = std::make_shared<FormatChoice>();
    auto pf = std::make_shared<PointFlags>();
    auto theta = std::make_shared<std::string>();
    pc->attach(cmd);
    fc->attach(cmd);
    pf->attach(cmd);
    cmd->add_option("--theta", *theta, "convergence-control parameter in [0, 1)")->required();
    cmd->callback([&action, &out, pc, fc, pf, theta] {
      action = [&out, pc, fc, pf, theta] {
        return cmd_residual(out, *pc, *fc, *pf, *theta);
      };
    });
  }

  // sweep
  {
    auto* cmd = app.add_subcommand("sweep", "residual over a theta grid, CSV output");
    auto pc = std::make_shared<PdeChoice>();
    auto pf = std::make_shared<PointFlags>();
    auto tmin = std::make_shared<std::string>("0");
    auto tmax = std::make_shared<std::string>("999/1000");
    auto step = std::make_shared<std::string>("1/1000");
    auto out_path = std::make_shared<std::string>();
    auto svg_path = std::make_shared<std::string>();
    auto serial = std::make_shared<bool>(false);
    pc->attach(cmd);
    pf->attach(cmd);
    cmd->add_option("--theta-min", *tmin);
    cmd->add_option("--theta-max", *tmax);
    cmd->add_option("--step", *step);
    cmd->add_option("--out", *out_path, "CSV file path (stdout when omitted)");
    cmd->add_option("--svg", *svg_path, "also draw the |residual| curve here");
    cmd->add_flag("--serial", *serial, "disable row-parallel evaluation");
    cmd->callback([&action, &out, pc, pf, tmin, tmax, step, out_path, svg_path, serial] {
      action = [&out, pc, pf, tmin, tmax, step, out_path, svg_path, serial] {
        return cmd_sweep(out, *pc, *pf, *tmin, *tmax, *step, *out_path, *svg_path, *serial);
      };
    });
  }

  // optimize
  {
    auto* cmd = app.add_subcommand("optimize", "grid + golden-section argmin of |residual|");
    auto pc = std::make_shared<PdeChoice>();
    auto fc = std::make_shared<FormatChoice>();
    auto pf = std::make_shared<PointFlags>();
    auto tmin = std::make_shared<std::string>("0");
    auto tmax = std::make_shared<std::string>("999/1000");
    auto coarse = std::make_shared<std::string>("1/1000");
    auto width = std::make_shared<std::string>("1/1000000");
    pc->attach(cmd);
    fc->attach(cmd);
    pf->attach(cmd);
    cmd->add_option("--theta-min", *tmin);
    cmd->add_option("--theta-max", *tmax);
    cmd->add_option("--coarse-step", *coarse);
    cmd->add_option("--width", *width, "stop when the bracket is this narrow");
    cmd->callback([&action, &out, pc, fc, pf, tmin, tmax, coarse, width] {
      action = [&out, pc, fc, pf, tmin, tmax, coarse, width] {
        return cmd_optimize(out, *pc, *fc, *pf, *tmin, *tmax, *coarse, *width);
      };
    });
  }

  // operator-check
  {
    auto* cmd = app.add_subcommand("operator-check",
                                   "pushforward differences of the symmetry-operator pair");
    auto fc = std::make_shared<FormatChoice>();
    auto order = std::make_shared<int>(4);
    auto map = std::make_shared<std::string>("operator-alt");
    fc->attach(cmd);
    cmd->add_option("--order", *order)->check(CLI::PositiveNumber);
    cmd->add_option("--map", *map, "operator-alt (default) or theorem1")
        ->check(CLI::IsMember({"operator-alt", "theorem1"}));
    cmd->callback([&action, &out, fc, order, map] {
      action = [&out, fc, order, map] { return cmd_operator_check(out, *fc, *order, *map); };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    out << deepest->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace homsym::cli

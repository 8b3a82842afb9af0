#pragma once

#include <string>
#include <vector>

#include "homsym/parser.hpp"
#include "homsym/series.hpp"

namespace homsym::model {

// A perturbed-equation description in block syntax:
//
//   model NAME {
//     indep: x, t;
//     dep: u;
//     param: a, b;      # optional
//     func: F;          # optional
//     E0: d(u,t) + d(F(u)*d(u,x),x);
//     E1: d(u,x,4);
//   }
//
// '#' starts a comment running to the end of the line. The independent
// variables are fixed to x, t in this version; the dependent variable and
// the parameter/function names are free identifiers. eps, theta and q are
// reserved for the perturbation and homotopy machinery and may not be
// declared or mentioned.
struct ModelFile {
  std::string name;
  std::vector<std::string> indep;
  std::string dep;
  std::vector<std::string> params;
  std::vector<std::string> funcs;
  std::string e0_source;
  std::string e1_source;

  // Table exposing exactly the declared names (series coefficients off).
  SymbolTable symbols() const;

  // Parses both sides under symbols() and validates the result.
  series::PerturbedPDE pde() const;
};

ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

}  // namespace homsym::model

#include "homsym/random_pde.hpp"

#include <vector>

namespace homsym::series {

namespace {

// splitmix64: tiny and identical everywhere, unlike <random> distributions.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

Expr monomial(Rng& rng) {
  int c = 1 + rng.below(6);
  if (rng.below(2) == 1) c = -c;
  int e[3];
  do {
    for (int& v : e) v = rng.below(3);
  } while (e[0] + e[1] + e[2] < 1 || e[0] + e[1] + e[2] > 3);
  std::vector<Expr> factors{Expr::integer(c)};
  const Expr bases[3] = {dep_u(), dep_u(1, 0), dep_u(2, 0)};
  for (int i = 0; i < 3; ++i)
    if (e[i] > 0) factors.push_back(Expr::pow(bases[i], e[i]));
  return Expr::product(std::move(factors));
}

}  // namespace

PerturbedPDE random_polynomial_pde(std::uint64_t seed) {
  Rng rng{seed};
  PerturbedPDE pde;
  pde.name = "random-" + std::to_string(seed);
  pde.e0 = dep_u(0, 1) + monomial(rng) + monomial(rng);
  pde.e1 = monomial(rng);
  validate_pde(pde);
  return pde;
}

}  // namespace homsym::series

#pragma once

#include <cstdint>

#include "homsym/series.hpp"

namespace homsym::series {

// Deterministic pseudo-random perturbed equation for property tests:
// E0 = d(u,t) + two monomials in u, d(u,x), d(u,x,2); E1 = one more.
// Differential order stays at most 2, total degree at most 3, and the
// coefficients are small nonzero integers, so hierarchies stay polynomial
// and cheap to normalize. The same seed yields the same equation on every
// platform.
PerturbedPDE random_polynomial_pde(std::uint64_t seed);

}  // namespace homsym::series

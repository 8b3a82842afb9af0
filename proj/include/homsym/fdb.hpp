#pragma once

#include <vector>

#include "homsym/expr.hpp"

namespace homsym::fdb {

// One solution of the weighted constraint r_1 + 2 r_2 + ... + n r_n = n
// together with a matrix p distributing each r_m over k+1 derivative slots
// (row m sums to r_m).
struct DioSolution {
  std::vector<int> r;               // r[m-1] = r_m
  std::vector<std::vector<int>> p;  // p[m-1][j], j = 0..k
};

// All solutions in lexicographic order (r vector first, then the rows of p).
std::vector<DioSolution> enumerate_dio(int n, int k);

// i-th q-derivative of the truncated series sum_{l<=N} q^l u_l with the
// given derivative suffix: sum_{l=i}^{N} l!/(l-i)! q^(l-i) u_l^(suffix).
Expr qderiv_series(int dx, int dt, int i, int N, CoeffFamily family = CoeffFamily::Plain);

// (d^n/dq^n of target with the series substituted) at q = 0, assembled from
// the generalized chain rule over the derivative slots occurring in target.
// Independent of the truncated-power-series route by construction.
Expr qderiv_at0(const Expr& target, int n);

}  // namespace homsym::fdb

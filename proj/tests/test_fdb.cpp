#include <functional>
#include <vector>

#include "doctest.h"
#include "homsym/fdb.hpp"
#include "homsym/normal_form.hpp"
#include "homsym/parser.hpp"
#include "homsym/series.hpp"

using namespace homsym;

namespace {

long long pascal(int n, int k) {
  static std::vector<std::vector<long long>> rows{{1}};
  while (static_cast<int>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<long long> next(rows.size() + 1, 1);
    for (size_t i = 1; i + 1 < next.size(); ++i) next[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(next));
  }
  return (k < 0 || k > n) ? 0 : rows[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

// Number of chain-rule terms, counted without enumerating them: each r with
// sum m*r_m = n contributes prod_m C(r_m + k, k) row fillings.
long long count_oracle(int n, int k) {
  std::function<long long(int, int)> go = [&](int m, int left) -> long long {
    if (m > n) return left == 0 ? 1 : 0;
    long long total = 0;
    for (int rm = 0; rm * m <= left; ++rm)
      total += pascal(rm + k, k) * go(m + 1, left - rm * m);
    return total;
  };
  return go(1, n);
}

std::vector<int> flatten(const fdb::DioSolution& s) {
  std::vector<int> key = s.r;
  for (const auto& row : s.p) key.insert(key.end(), row.begin(), row.end());
  return key;
}

}  // namespace

TEST_CASE("constraint solutions, small cases") {
  CHECK(fdb::enumerate_dio(0, 3).size() == 1);
  CHECK(fdb::enumerate_dio(1, 0).size() == 1);
  CHECK(fdb::enumerate_dio(1, 3).size() == 4);
  CHECK(fdb::enumerate_dio(2, 1).size() == 5);

  auto one = fdb::enumerate_dio(1, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].r == std::vector<int>{1});
  CHECK(one[0].p == std::vector<std::vector<int>>{{0, 1}});
  CHECK(one[1].p == std::vector<std::vector<int>>{{1, 0}});
}

TEST_CASE("constraint solutions satisfy the weighted equation and row sums") {
  for (int n : {3, 4}) {
    for (int k : {1, 2}) {
      auto sols = fdb::enumerate_dio(n, k);
      for (const auto& s : sols) {
        REQUIRE(s.r.size() == static_cast<size_t>(n));
        REQUIRE(s.p.size() == static_cast<size_t>(n));
        int weighted = 0;
        for (int m = 1; m <= n; ++m) {
          weighted += m * s.r[static_cast<size_t>(m - 1)];
          const auto& row = s.p[static_cast<size_t>(m - 1)];
          REQUIRE(row.size() == static_cast<size_t>(k) + 1);
          int rowSum = 0;
          for (int v : row) {
            CHECK(v >= 0);
            rowSum += v;
          }
          CHECK(rowSum == s.r[static_cast<size_t>(m - 1)]);
        }
        CHECK(weighted == n);
      }
      // Strictly increasing lexicographic order implies no duplicates.
      for (size_t i = 0; i + 1 < sols.size(); ++i) {
        auto a = flatten(sols[i]);
        auto b = flatten(sols[i + 1]);
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
      }
    }
  }
}

TEST_CASE("solution counts match the closed-form count") {
  CHECK(count_oracle(3, 1) == 10);
  CHECK(count_oracle(4, 2) == 51);
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= 3; ++k)
      CHECK(static_cast<long long>(fdb::enumerate_dio(n, k).size()) == count_oracle(n, k));
}

TEST_CASE("derivatives of the truncated series") {
  CHECK(equal_mod_normal(fdb::qderiv_series(0, 0, 1, 2), parse_expression("u1 + 2*q*u2")));
  CHECK(equal_mod_normal(fdb::qderiv_series(2, 0, 0, 2),
                         parse_expression("u0_xx + q*u1_xx + q^2*u2_xx")));
  CHECK(equal_mod_normal(fdb::qderiv_series(0, 0, 3, 3), parse_expression("6*u3")));
  CHECK(is_zero(fdb::qderiv_series(0, 0, 3, 2)));
  CHECK(equal_mod_normal(fdb::qderiv_series(0, 1, 1, 1, CoeffFamily::Hat),
                         parse_expression("hu1_t")));
}

TEST_CASE("chain-rule derivative, hand-checked low orders") {
  Expr burgers = parse_expression("d(u,t) + u*d(u,x)");
  CHECK(equal_mod_normal(fdb::qderiv_at0(burgers, 0), parse_expression("u0_t + u0*u0_x")));
  CHECK(equal_mod_normal(fdb::qderiv_at0(burgers, 1),
                         parse_expression("u1_t + u0*u1_x + u1*u0_x")));
  CHECK(equal_mod_normal(fdb::qderiv_at0(Expr::integer(1) / dep_u(), 1),
                         parse_expression("-u1/u0^2")));
}

TEST_CASE("chain-rule derivative agrees with the power-series route") {
  std::vector<Expr> targets = {
      parse_expression("d(u,t) + d(F(u)*d(u,x),x)"),
      parse_expression("d(u,x,4)"),
      parse_expression("F(d(u,x))/u"),
      parse_expression("u^3 + a*d(u,x)*d(u,t)"),
  };
  for (const auto& target : targets) {
    for (int n = 0; n <= 4; ++n) {
      CAPTURE(target.str());
      CAPTURE(n);
      CHECK(equal_mod_normal(fdb::qderiv_at0(target, n), series::q_derivative_at0(target, n)));
    }
  }
}

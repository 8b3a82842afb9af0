#include "homsym/fdb.hpp"

#include <algorithm>

#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"

namespace homsym::fdb {

namespace {

void enum_r(int n, int pos, int remaining, std::vector<int>& r, std::vector<std::vector<int>>& out) {
  if (pos == n) {
    if (remaining == 0) out.push_back(r);
    return;
  }
  int weight = pos + 1;
  for (int v = 0; v * weight <= remaining; ++v) {
    r[static_cast<size_t>(pos)] = v;
    enum_r(n, pos + 1, remaining - v * weight, r, out);
  }
  r[static_cast<size_t>(pos)] = 0;
}

void enum_compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    enum_compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<DioSolution> enumerate_dio(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("enumerate_dio arguments must be nonnegative");
  std::vector<std::vector<int>> rvecs;
  if (n == 0) {
    rvecs.push_back({});
  } else {
    std::vector<int> r(static_cast<size_t>(n), 0);
    enum_r(n, 0, n, r, rvecs);
  }
  std::vector<DioSolution> out;
  for (const auto& r : rvecs) {
    // Row-by-row cross product of the compositions, row-major order.
    std::vector<std::vector<std::vector<int>>> rows;
    rows.reserve(r.size());
    for (int rm : r) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      enum_compositions(rm, k + 1, cur, comps);
      rows.push_back(std::move(comps));
    }
    std::vector<size_t> idx(r.size(), 0);
    bool more = true;
    while (more) {
      DioSolution s;
      s.r = r;
      s.p.reserve(r.size());
      for (size_t m = 0; m < r.size(); ++m) s.p.push_back(rows[m][idx[m]]);
      out.push_back(std::move(s));
      if (r.empty()) break;
      // Advance odometer-style, last row fastest.
      size_t m = r.size();
      while (true) {
        if (m == 0) {
          more = false;
          break;
        }
        --m;
        if (++idx[m] < rows[m].size()) break;
        idx[m] = 0;
      }
    }
  }
  return out;
}

Expr qderiv_series(int dx, int dt, int i, int N, CoeffFamily family) {
  if (i < 0 || N < 0) throw DomainError("qderiv_series arguments must be nonnegative");
  std::vector<Expr> terms;
  Expr q = param("q");
  for (int l = i; l <= N; ++l) {
    Expr c = Expr::constant(Rational(factorial(l), factorial(l - i)));
    terms.push_back(c * Expr::pow(q, l - i) * ucoeff(l, dx, dt, family));
  }
  return Expr::sum(std::move(terms));
}

namespace {

void collect_dep_atoms(const Expr& e, std::vector<Atom>& out) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return;
    case ExprKind::Leaf: {
      const Atom& a = e.atom();
      if (a.kind == AtomKind::Dep) {
        for (const auto& seen : out)
          if (atom_equal(seen, a)) return;
        out.push_back(a);
      } else if (a.kind == AtomKind::Func) {
        collect_dep_atoms(a.argument(), out);
      }
      return;
    }
    case ExprKind::Power:
      collect_dep_atoms(e.base(), out);
      return;
    case ExprKind::Sum:
    case ExprKind::Product:
      for (const auto& k : e.operands()) collect_dep_atoms(k, out);
      return;
  }
}

}  // namespace

Expr qderiv_at0(const Expr& target, int n) {
  if (n < 0) throw DomainError("negative derivative order");
  std::vector<Atom> slots;
  collect_dep_atoms(target, slots);
  std::sort(slots.begin(), slots.end(), [](const Atom& a, const Atom& b) { return atom_cmp(a, b) < 0; });
  Expr u0 = ucoeff(0, 0, 0);
  if (n == 0) return substitute_dependent(target, u0);
  if (slots.empty()) return Expr();

  int k = static_cast<int>(slots.size()) - 1;
  auto sols = enumerate_dio(n, k);
  std::vector<Expr> terms;
  for (const auto& s : sols) {
    // Mixed partial with respect to each slot, column sums give the counts.
    Expr partial = target;
    bool vanished = false;
    for (int j = 0; j <= k; ++j) {
      int count = 0;
      for (int m = 0; m < n; ++m) count += s.p[static_cast<size_t>(m)][static_cast<size_t>(j)];
      for (int c = 0; c < count; ++c) {
        partial = formal_diff(partial, slots[static_cast<size_t>(j)]);
        if (partial.is_zero_constant()) {
          vanished = true;
          break;
        }
      }
      if (vanished) break;
    }
    if (vanished) continue;
    partial = substitute_dependent(partial, u0);

    Int denom = 1;
    std::vector<Expr> fac;
    fac.push_back(partial);
    for (int m = 1; m <= n; ++m) {
      for (int j = 0; j <= k; ++j) {
        int pmj = s.p[static_cast<size_t>(m - 1)][static_cast<size_t>(j)];
        denom *= factorial(pmj);
        if (pmj > 0) {
          const Atom& sl = slots[static_cast<size_t>(j)];
          fac.push_back(Expr::pow(ucoeff(m, sl.deriv[0], sl.deriv[1]), pmj));
        }
      }
    }
    fac.push_back(Expr::constant(Rational(factorial(n), denom)));
    terms.push_back(Expr::product(std::move(fac)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace homsym::fdb

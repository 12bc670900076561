// Independent LP oracles for small problems: vertex enumeration for the
// optimum and Fourier-Motzkin elimination for feasibility and rays.
#ifndef SEPCS_TESTS_LP_ORACLE_HPP
#define SEPCS_TESTS_LP_ORACLE_HPP

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "sepcs/lp.hpp"

namespace sepcs::testing {

struct Ineq {
  std::vector<Rational> a;  // a . x <= b
  Rational b;
};

/// True iff the system has a real solution.
inline bool fm_feasible(std::vector<Ineq> sys, int vars) {
  for (int j = vars - 1; j >= 0; --j) {
    std::vector<Ineq> pos, neg, next;
    for (auto& q : sys) {
      int s = q.a[j].sign();
      (s > 0 ? pos : s < 0 ? neg : next).push_back(q);
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        // p.a[j] > 0 > n.a[j]: scale so the j coefficients cancel.
        Rational lp = -n.a[j];
        Rational ln = p.a[j];
        Ineq c;
        c.a.resize(vars);
        for (int k = 0; k < vars; ++k) c.a[k] = lp * p.a[k] + ln * n.a[k];
        c.a[j] = Rational(0);
        c.b = lp * p.b + ln * n.b;
        next.push_back(std::move(c));
      }
    }
    sys = std::move(next);
  }
  for (const auto& q : sys) {
    if (q.b.sign() < 0) return false;
  }
  return true;
}

inline std::vector<Ineq> constraints_of(const LinearProgram& lp) {
  std::vector<Ineq> sys;
  for (const auto& r : lp.rows) sys.push_back({r.coef, r.rhs});
  for (int j = 0; j < lp.num_vars; ++j) {
    Ineq q{std::vector<Rational>(lp.num_vars, Rational(0)), Rational(0)};
    q.a[j] = Rational(-1);
    sys.push_back(std::move(q));
  }
  return sys;
}

inline LpStatus fm_status(const LinearProgram& lp) {
  auto sys = constraints_of(lp);
  if (!fm_feasible(sys, lp.num_vars)) return LpStatus::kInfeasible;
  // Improving ray: A d <= 0, d >= 0, c . d >= 1.
  std::vector<Ineq> ray;
  for (const auto& q : sys) ray.push_back({q.a, Rational(0)});
  Ineq gain{std::vector<Rational>(lp.num_vars), Rational(-1)};
  for (int j = 0; j < lp.num_vars; ++j) gain.a[j] = -lp.objective[j];
  ray.push_back(std::move(gain));
  return fm_feasible(ray, lp.num_vars) ? LpStatus::kUnbounded : LpStatus::kOptimal;
}

/// Solves a square system exactly; std::nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<Rational> x(n);
  for (int r = 0; r < n; ++r) x[r] = rhs[r] / m[r][r];
  return x;
}

/// Best objective over all feasible vertices (tight n-subsets of the
/// constraints); std::nullopt when there is no feasible vertex.
inline std::optional<Rational> vertex_optimum(const LinearProgram& lp) {
  auto sys = constraints_of(lp);
  const int n = lp.num_vars;
  const int k = static_cast<int>(sys.size());
  std::optional<Rational> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> choose = [&](int at, int from) {
    if (at == n) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> rhs;
      for (int idx : pick) {
        m.push_back(sys[idx].a);
        rhs.push_back(sys[idx].b);
      }
      auto x = solve_square(m, rhs);
      if (!x) return;
      for (const auto& q : sys) {
        Rational lhs(0);
        for (int j = 0; j < n; ++j) lhs += q.a[j] * (*x)[j];
        if (lhs > q.b) return;
      }
      Rational v(0);
      for (int j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
      if (!best || v > *best) best = v;
      return;
    }
    for (int idx = from; idx < k; ++idx) {
      pick[at] = idx;
      choose(at + 1, idx + 1);
    }
  };
  choose(0, 0);
  return best;
}

/// Small random LP: 1..3 variables, 1..4 rows, integer data with the odd
/// half-integer thrown in.
inline LinearProgram random_small_lp(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  auto value = [&](int lo, int hi) {
    Rational v(pick(lo, hi));
    if (pick(0, 5) == 0) v = v / Rational(2);
    return v;
  };
  const int n = pick(1, 3);
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) lp.objective[j] = value(-2, 3);
  const int m = pick(1, 4);
  for (int r = 0; r < m; ++r) {
    std::vector<Rational> coef(n);
    for (auto& c : coef) c = value(-3, 3);
    lp.add_row(std::move(coef), value(-3, 6));
  }
  return lp;
}

}  // namespace sepcs::testing

#endif  // SEPCS_TESTS_LP_ORACLE_HPP

#include "rsell/simplex.hpp"

#include <cmath>
#include <cstddef>

#include "rsell/errors.hpp"

namespace rsell {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kZeroEps = 1e-10;

struct Tableau {
  // rows x (n_total + 1); last column is the rhs. basis[r] = column basic
  // in row r. Row `rows` is the objective.
  std::size_t m = 0, n = 0;
  std::vector<std::vector<double>> t;
  std::vector<std::size_t> basis;

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = t[pr][pc];
    for (double& v : t[pr]) v /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) t[r][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = smallest-index negative reduced cost; leaving =
  // min ratio, ties to the smallest basis index. Only the first `scan`
  // columns may enter (phase II bars the artificials).
  int iterate(int max_iters, std::size_t scan) {
    int it = 0;
    while (it < max_iters) {
      std::size_t pc = n;
      for (std::size_t j = 0; j < scan; ++j) {
        if (t[m][j] < -kPivotEps) {
          pc = j;
          break;
        }
      }
      if (pc == n) return it;  // optimal
      std::size_t pr = m;
      double best = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][pc] > kPivotEps) {
          const double ratio = t[r][n] / t[r][pc];
          if (pr == m || ratio < best - 1e-15 ||
              (ratio < best + 1e-15 && basis[r] < basis[pr])) {
            pr = r;
            best = ratio;
          }
        }
      }
      if (pr == m) return -1;  // unbounded
      pivot(pr, pc);
      ++it;
    }
    return -2;  // iteration limit
  }
};

}  // namespace

LpSolution simplex_solve(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a_eq,
                         const std::vector<double>& b_eq,
                         const std::vector<std::vector<double>>& a_ge,
                         const std::vector<double>& b_ge) {
  const std::size_t nv = c.size();
  const std::size_t me = a_eq.size();
  const std::size_t mg = a_ge.size();
  const std::size_t m = me + mg;
  // Columns: structural | surplus (one per >= row) | artificial (one per row).
  const std::size_t ns = nv + mg;
  const std::size_t n = ns + m;

  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.t.assign(m + 1, std::vector<double>(n + 1, 0.0));
  tb.basis.assign(m, 0);

  for (std::size_t r = 0; r < m; ++r) {
    const std::vector<double>& row = r < me ? a_eq[r] : a_ge[r - me];
    double rhs = r < me ? b_eq[r] : b_ge[r - me];
    double sign = 1.0;
    if (rhs < 0.0) sign = -1.0;
    for (std::size_t j = 0; j < nv; ++j) tb.t[r][j] = sign * row[j];
    if (r >= me) tb.t[r][nv + (r - me)] = -sign;  // surplus
    tb.t[r][ns + r] = 1.0;                        // artificial
    tb.t[r][n] = sign * rhs;
    tb.basis[r] = ns + r;
  }
  // Phase I objective: minimize the artificial sum.
  for (std::size_t j = 0; j <= n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += tb.t[r][j];
    tb.t[m][j] = (j >= ns && j < n) ? 0.0 : -s;
  }
  const int max_iters = 200 * static_cast<int>(m + n + 10);
  int it1 = tb.iterate(max_iters, n);
  if (it1 == -2) throw IterationLimit("simplex: phase I iteration limit");
  if (it1 == -1) throw Unbounded("simplex: phase I unbounded (internal)");
  if (tb.t[m][n] < -1e-8) {
    LpSolution bad;
    bad.status = LpStatus::Infeasible;
    return bad;
  }
  // Drive any artificial still basic at zero level out of the basis; a fully
  // zero row is a redundant constraint and its artificial may stay.
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] >= ns) {
      std::size_t pc = n;
      for (std::size_t j = 0; j < ns; ++j) {
        if (std::abs(tb.t[r][j]) > kPivotEps) {
          pc = j;
          break;
        }
      }
      if (pc < n) tb.pivot(r, pc);
    }
  }
  // Phase II objective row (artificials cost 0 but are barred from entering).
  for (std::size_t j = 0; j <= n; ++j) tb.t[m][j] = 0.0;
  for (std::size_t j = 0; j < nv; ++j) tb.t[m][j] = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const double cb = tb.basis[r] < nv ? c[tb.basis[r]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= n; ++j) tb.t[m][j] -= cb * tb.t[r][j];
  }
  int it2 = tb.iterate(max_iters, ns);
  if (it2 == -2) throw IterationLimit("simplex: phase II iteration limit");
  LpSolution sol;
  if (it2 == -1) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.iterations = it1 + it2;
  sol.x.assign(nv, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] < nv) sol.x[tb.basis[r]] = tb.t[r][n];
  }
  for (double& v : sol.x) {
    if (v < 0.0 && v > -kZeroEps) v = 0.0;
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.objective += c[j] * sol.x[j];
  return sol;
}

}  // namespace rsell

#pragma once

#include <string>
#include <vector>

namespace rsell {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule for
///   min c'x  s.t.  A_eq x = b_eq,  A_ge x >= b_ge,  x >= 0.
/// Residuals of the returned basic solution are below 1e-9.
LpSolution simplex_solve(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a_eq,
                         const std::vector<double>& b_eq,
                         const std::vector<std::vector<double>>& a_ge,
                         const std::vector<double>& b_ge);

}  // namespace rsell

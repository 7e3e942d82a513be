#pragma once

#include <optional>
#include <vector>

#include "rsell/closed_form.hpp"
#include "rsell/model.hpp"

namespace rsell {

struct PriceCurve {
  struct Sample {
    double s;
    double price;
    PolicyKind kind;
    double guarantee;
  };
  struct Jump {
    double s_hat;
    double price_left;
    double price_right;
  };
  std::vector<Sample> samples;
  std::optional<Jump> jump;
};

/// Robust price/guarantee over an s-grid on (0, xi), with the policy-switch
/// point located by bisection on the policy kind (not on the price).
PriceCurve price_curve(double mu, double xi, std::size_t grid);

/// The search cost at which the robust policy switches from the uniform
/// family to a deterrence policy, to 1e-8.
double jump_threshold(double mu, double xi);

/// Blackwell comparison of the robust policies of two parameter sets that
/// differ only in s: MPS of the posterior distributions.
MpsOrder informativeness_order(const ModelParams& p1, const ModelParams& p2);

struct MonotonicityViolation {
  ModelParams at;
  char direction;  // 's', 'x' (xi) or 'm' (mu)
  double delta;
};

struct MonotonicityReport {
  std::size_t checks = 0;
  std::vector<MonotonicityViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Finite-difference sign checks of the guarantee over a parameter grid:
/// increasing in s and mu, decreasing in xi.
MonotonicityReport guarantee_monotonicity(const std::vector<double>& mus,
                                          const std::vector<double>& xis,
                                          const std::vector<double>& s_fracs,
                                          double step = 1e-3,
                                          double strict_tol = 1e-9);

}  // namespace rsell

#pragma once

#include <functional>
#include <string>

#include "rsell/closed_form.hpp"
#include "rsell/model.hpp"

namespace rsell {

/// Outside-option distribution with full support on [0,1] and a log-concave
/// density, for the known-distribution benchmark.
struct SmoothDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  double mean = 0.0;
  std::string name;
};

/// Named families: "uniform", "texp" (truncated exponential, param = rate),
/// "triangular" (param = mode), "beta" (params = alpha, beta; both >= 1).
SmoothDistribution make_smooth_family(const std::string& name, double param1 = 0.0,
                                      double param2 = 0.0);

/// Midpoint log-concavity test of the density on a 200-point grid; throws
/// NotLogConcave on failure. Also checks full support.
void check_log_concave(const SmoothDistribution& g, std::size_t grid = 200);

/// S_G for smooth G by adaptive Simpson quadrature to 1e-10.
double smooth_search_benefit(const SmoothDistribution& g, double t);

/// Reservation value for smooth G: root of S_G(a) = s.
double smooth_reservation_value(const SmoothDistribution& g, double s);

/// Robustly optimal strategy at zero search cost: same code path as
/// robust_strategy with s = 0 (uniform information).
RobustSolution zero_search_strategy(double mu, double xi);

struct KnownDistPrice {
  double p_o = 0.0;      // optimal price
  double p_h = 0.0;      // root of p g(1-p) = G(1-p)
  double a = 0.0;        // reservation value at this s
  bool deterrence = false;  // p_o = 1-a branch
  double profit_factor = 0.0;  // max{1-a, p_h G(1-p_h)}; profit = mu * factor
};

/// Optimal (full information) price against a known outside-option
/// distribution. Throws NotLogConcave / NoRoot.
KnownDistPrice known_dist_price(const SmoothDistribution& g, double s);

/// Search cost at which the optimal price drops from p_h to 1-a.
double known_dist_threshold(const SmoothDistribution& g);

}  // namespace rsell

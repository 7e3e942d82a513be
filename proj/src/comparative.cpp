#include "rsell/comparative.hpp"

#include <cmath>

#include "rsell/errors.hpp"

namespace rsell {

namespace {

bool is_deterrence(PolicyKind k) {
  return k == PolicyKind::Full || k == PolicyKind::Mixture ||
         k == PolicyKind::Binary;
}

PolicyKind kind_at(double mu, double xi, double s) {
  return robust_strategy(validate_params(mu, xi, s)).strategy.kind;
}

}  // namespace

double jump_threshold(double mu, double xi) {
  // The robust policy is uniform for small s and a deterrence policy for
  // s near xi; bisect on the kind label.
  double lo = 1e-12 * xi, hi = xi * (1.0 - 1e-12);
  if (is_deterrence(kind_at(mu, xi, lo))) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (is_deterrence(kind_at(mu, xi, mid)) ? hi : lo) = mid;
    if (hi - lo < 1e-9 * xi) break;
  }
  return 0.5 * (lo + hi);
}

PriceCurve price_curve(double mu, double xi, std::size_t grid) {
  if (grid < 2) throw Error("price_curve: grid must be at least 2");
  PriceCurve curve;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double s = xi * static_cast<double>(i) / static_cast<double>(grid + 1);
    const RobustSolution sol = robust_strategy(validate_params(mu, xi, s));
    curve.samples.push_back({s, sol.strategy.price, sol.strategy.kind,
                             sol.guarantee});
  }
  const double s_hat = jump_threshold(mu, xi);
  const double eps = std::max(1e-10, 1e-9 * xi);
  const RobustSolution left =
      robust_strategy(validate_params(mu, xi, std::max(s_hat - eps, 1e-14)));
  const RobustSolution right =
      robust_strategy(validate_params(mu, xi, std::min(s_hat + eps, xi * (1 - 1e-14))));
  if (!is_deterrence(left.strategy.kind) && is_deterrence(right.strategy.kind)) {
    curve.jump = PriceCurve::Jump{s_hat, left.strategy.price,
                                  right.strategy.price};
  }
  return curve;
}

MpsOrder informativeness_order(const ModelParams& p1, const ModelParams& p2) {
  if (std::abs(p1.mu - p2.mu) > 1e-12 || std::abs(p1.xi - p2.xi) > 1e-12) {
    throw Error("informativeness_order: parameters may differ only in s");
  }
  const auto d1 = robust_strategy(p1).strategy.posterior_dist;
  const auto d2 = robust_strategy(p2).strategy.posterior_dist;
  return mps_compare(d1, d2);
}

MonotonicityReport guarantee_monotonicity(const std::vector<double>& mus,
                                          const std::vector<double>& xis,
                                          const std::vector<double>& s_fracs,
                                          double step, double strict_tol) {
  MonotonicityReport rep;
  auto guar = [](double mu, double xi, double s) {
    return robust_strategy(validate_params(mu, xi, s)).guarantee;
  };
  for (double mu : mus) {
    for (double xi : xis) {
      for (double f : s_fracs) {
        const double s = f * xi;
        const double g0 = guar(mu, xi, s);
        ++rep.checks;
        // s-direction: strictly increasing.
        if (s + step < xi) {
          const double d = guar(mu, xi, s + step) - g0;
          if (d <= strict_tol) rep.violations.push_back({{mu, xi, s}, 's', d});
        }
        // xi-direction: strictly decreasing.
        if (xi + step < 1.0 && s < xi) {
          const double d = guar(mu, xi + step, s) - g0;
          if (d >= -strict_tol) rep.violations.push_back({{mu, xi, s}, 'x', d});
        }
        // mu-direction: weakly increasing.
        if (mu + step < 1.0) {
          const double d = guar(mu + step, xi, s) - g0;
          if (d < -strict_tol) rep.violations.push_back({{mu, xi, s}, 'm', d});
        }
      }
    }
  }
  return rep;
}

}  // namespace rsell

#pragma once

#include <cstdint>

#include "rsell/distribution.hpp"
#include "rsell/model.hpp"

namespace rsell {

/// Reservation value of the outside option: the unique a with S_G(a) = s.
struct ReservationValue {
  double a = 0.0;
};

/// Distribution of z = min{v, a}; support in [0, 1-s/xi], mean xi - s.
struct EffectiveOutsideOption {
  PiecewiseDistribution dist;
  double a = 0.0;  // reservation value of the inducing G (top of support)
};

/// Expected search benefit S_G(t) = E_G[max{t,v}] - t, computed exactly on
/// pieces. Nonnegative, nonincreasing and convex in t.
double search_benefit(const PiecewiseDistribution& g, double t);

/// Solves S_G(a) = s by bracketing bisection on [mean(G)-s, 1-s/mean(G)].
/// Throws NoRoot when S_G(mean-s) < s beyond tolerance (bad G mean).
ReservationValue reservation_value(const PiecewiseDistribution& g, double s);

/// Pushforward of G through z = min{v, a}: G below a plus an atom of mass
/// 1 - G(a-) at a.
EffectiveOutsideOption effective_distribution(const PiecewiseDistribution& g,
                                              double s);

struct DemandRevenue {
  double demand = 0.0;
  double revenue = 0.0;
};

/// Probability of eventual purchase and revenue at price p under posterior
/// distribution H and outside-option distribution G. Buy-now uses the weak
/// rule w - p >= a (left CDF limit at p+a); buy-later the strict w - p > v.
DemandRevenue demand_and_revenue(double p, const PiecewiseDistribution& h,
                                 const PiecewiseDistribution& g, double s);

struct SimulationResult {
  double demand_estimate = 0.0;
  double stderr_estimate = 0.0;
  double mean_match_value = 0.0;  // diagnostic only; purchase depends on w
  std::uint64_t trials = 0;
};

/// Monte Carlo of the search timing: draw w ~ H, buy now if w - p >= a, else
/// draw v ~ G and buy iff w - p > v. Deterministic given seed.
SimulationResult simulate_market(double p, const PiecewiseDistribution& h,
                                 const PiecewiseDistribution& g, double s,
                                 std::uint64_t n_trials, std::uint64_t seed);

}  // namespace rsell

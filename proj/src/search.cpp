#include "rsell/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rsell/errors.hpp"

namespace rsell {

double search_benefit(const PiecewiseDistribution& g, double t) {
  // S_G(t) = \int_t^1 (v - t) dG(v)
  double acc = 0.0;
  for (const auto& a : g.atoms()) {
    if (a.loc > t) acc += a.mass * (a.loc - t);
  }
  for (const auto& s : g.segments()) {
    const double lo = std::max(s.lo, t);
    if (lo >= s.hi) continue;
    const double d = s.density();
    // \int_lo^hi (v - t) d dv
    acc += d * (0.5 * (s.hi * s.hi - lo * lo) - t * (s.hi - lo));
  }
  return acc;
}

ReservationValue reservation_value(const PiecewiseDistribution& g, double s) {
  const double xi = g.mean();
  if (!(s < xi)) {
    throw NoRoot("reservation_value: s >= mean(G), no indifference point");
  }
  double lo = xi - s;
  double hi = 1.0 - s / xi;
  const double s_lo = search_benefit(g, lo);
  if (s_lo < s - 1e-9) {
    throw NoRoot("reservation_value: S_G(xi-s) < s; mean of G inconsistent");
  }
  // S_G is piecewise quadratic with kinks; bisection is robust to them.
  double f_lo = s_lo - s;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = search_benefit(g, mid) - s;
    if (f_mid >= 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (std::abs(f_lo) < 1e-14 && hi - lo < 1e-12) break;
  }
  ReservationValue rv{0.5 * (lo + hi)};
  if (std::abs(search_benefit(g, rv.a) - s) > 1e-10) {
    // Flat stretch of S at the support top (s = 0 case): prefer the lower edge.
    rv.a = lo;
  }
  return rv;
}

EffectiveOutsideOption effective_distribution(const PiecewiseDistribution& g,
                                              double s) {
  const double a = reservation_value(g, s).a;
  std::vector<PiecewiseDistribution::Atom> atoms;
  std::vector<PiecewiseDistribution::Segment> segs;
  for (const auto& at : g.atoms()) {
    if (at.loc < a) atoms.push_back(at);
  }
  for (const auto& sg : g.segments()) {
    if (sg.lo >= a) continue;
    const double hi = std::min(sg.hi, a);
    segs.push_back({sg.lo, hi, sg.density() * (hi - sg.lo)});
  }
  const double below = g.cdf(a, Side::Left);
  if (1.0 - below > 0.0) atoms.push_back({a, 1.0 - below});
  EffectiveOutsideOption out;
  out.dist = PiecewiseDistribution(std::move(atoms), std::move(segs)).canonical();
  out.a = a;
  return out;
}

DemandRevenue demand_and_revenue(double p, const PiecewiseDistribution& h,
                                 const PiecewiseDistribution& g, double s) {
  const double a = reservation_value(g, s).a;
  // Buyers above p+a purchase immediately whatever v turns out to be.
  double demand = (1.0 - g.cdf(a, Side::Left)) * (1.0 - h.cdf(p + a, Side::Left));
  // Buyers below p+a search and return iff w - p > v.
  for (const auto& at : g.atoms()) {
    if (at.loc < a) demand += at.mass * (1.0 - h.cdf(p + at.loc, Side::Right));
  }
  for (const auto& sg : g.segments()) {
    if (sg.lo >= a) continue;
    const double hi = std::min(sg.hi, a);
    const double d = sg.density();
    // \int_lo^hi (1 - H(p+v)) dv
    demand += d * ((hi - sg.lo) - h.cdf_integral(p + sg.lo, p + hi));
  }
  return {demand, p * demand};
}

SimulationResult simulate_market(double p, const PiecewiseDistribution& h,
                                 const PiecewiseDistribution& g, double s,
                                 std::uint64_t n_trials, std::uint64_t seed) {
  if (n_trials == 0) throw Error("simulate_market: n_trials must be positive");
  const double a = reservation_value(g, s).a;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uint64_t bought = 0;
  double x_sum = 0.0;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    const double w = h.sample(unif(rng));
    const double x = unif(rng) < w ? 1.0 : 0.0;
    x_sum += x;
    bool buy;
    if (w - p >= a) {
      buy = true;
    } else {
      const double v = g.sample(unif(rng));
      buy = (w - p > v);
    }
    if (buy) ++bought;
  }
  SimulationResult r;
  r.trials = n_trials;
  r.demand_estimate = static_cast<double>(bought) / static_cast<double>(n_trials);
  r.stderr_estimate = std::sqrt(std::max(
      r.demand_estimate * (1.0 - r.demand_estimate) / static_cast<double>(n_trials),
      1.0 / (static_cast<double>(n_trials) * static_cast<double>(n_trials))));
  r.mean_match_value = x_sum / static_cast<double>(n_trials);
  return r;
}

}  // namespace rsell

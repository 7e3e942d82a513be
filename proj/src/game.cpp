#include "rsell/game.hpp"

#include <algorithm>
#include <cmath>

#include "rsell/closed_form.hpp"
#include "rsell/errors.hpp"

namespace rsell {

namespace {

// Sorted unique breakpoints clipped to [lo, hi], always containing both ends.
std::vector<double> clipped_breakpoints(const std::vector<double>& candidates,
                                        double lo, double hi) {
  std::vector<double> xs{lo, hi};
  for (double c : candidates) {
    if (c > lo + 1e-15 && c < hi - 1e-15) xs.push_back(c);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
           xs.end());
  return xs;
}

double snapped(const PiecewiseDistribution& d, double x) {
  return d.snap_to_breakpoint(x);
}

PiecewiseScalarFunction assemble(const std::vector<double>& xs,
                                 const std::vector<double>& values,
                                 const std::vector<double>& lo_right,
                                 const std::vector<double>& hi_left) {
  // lo_right[k] / hi_left[k] are the one-sided limits bounding piece k.
  std::vector<double> slopes(xs.size() - 1), intercepts(xs.size() - 1);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double dx = xs[k + 1] - xs[k];
    slopes[k] = (hi_left[k] - lo_right[k]) / dx;
    intercepts[k] = lo_right[k] - slopes[k] * xs[k];
  }
  return PiecewiseScalarFunction::raw(xs, values, std::move(slopes),
                                      std::move(intercepts));
}

}  // namespace

PiecewiseScalarFunction nature_kernel(double price,
                                      const PiecewiseDistribution& h,
                                      const ModelParams& params) {
  const double top = params.effective_top();
  std::vector<double> cand;
  for (double b : h.breakpoints()) cand.push_back(b - price);
  const auto xs = clipped_breakpoints(cand, 0.0, top);

  std::vector<double> values(xs.size()), lo_right(xs.size() - 1),
      hi_left(xs.size() - 1);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    values[k] = h.cdf(snapped(h, price + xs[k]), Side::Right);
  }
  // The deterrence atom at p + (1 - s/xi) buys for every adversary when
  // p <= s/xi, so the endpoint excludes it.
  if (price <= params.deterrence_price() + 1e-12 &&
      h.atom_mass_at(price + top) > 0.0) {
    values.back() = h.cdf(snapped(h, price + top), Side::Left);
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    lo_right[k] = values[k];
    hi_left[k] = h.cdf(snapped(h, price + xs[k + 1]), Side::Left);
  }
  return assemble(xs, values, lo_right, hi_left);
}

PiecewiseScalarFunction seller_kernel(double price,
                                      const PiecewiseDistribution& ghat,
                                      const ModelParams& params) {
  const double top = params.effective_top();
  const double closure_at = price + top;  // inside [0,1] iff price <= s/xi
  std::vector<double> cand{price, closure_at};
  for (double b : ghat.breakpoints()) cand.push_back(price + b);
  const auto xs = clipped_breakpoints(cand, 0.0, 1.0);

  // left_of carries no closure: the limit from below at p+top must stay at
  // Ghat(top-) even though the point itself is closed to 1.
  auto left_of = [&](double w) {
    if (w <= price) return 0.0;
    return ghat.cdf(snapped(ghat, w - price), Side::Left);
  };
  auto value_of = [&](double w) {
    if (w >= closure_at - 1e-12) return 1.0;
    return left_of(w);
  };
  auto right_of = [&](double w) {
    if (w >= closure_at - 1e-12) return 1.0;
    if (w < price) return 0.0;
    return ghat.cdf(snapped(ghat, w - price), Side::Right);
  };
  std::vector<double> values(xs.size()), lo_right(xs.size() - 1),
      hi_left(xs.size() - 1);
  for (std::size_t k = 0; k < xs.size(); ++k) values[k] = value_of(xs[k]);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    lo_right[k] = right_of(xs[k]);
    hi_left[k] = left_of(xs[k + 1]);
  }
  return assemble(xs, values, lo_right, hi_left);
}

NatureResponse nature_best_response(double price, const PiecewiseDistribution& h,
                                    const ModelParams& params) {
  const auto f = nature_kernel(price, h, params);
  const auto mo = moment_optimum(f, params.effective_mean());
  NatureResponse r;
  r.value = mo.value;
  r.demand = 1.0 - mo.value;
  r.witness.dist = mo.witness;
  r.witness.a = mo.witness.breakpoints().empty()
                    ? params.effective_mean()
                    : mo.witness.breakpoints().back();
  r.contacts = mo.contacts;
  r.open_contact = mo.open_contact;
  return r;
}

SellerResponse seller_best_response(const PiecewiseScalarFunction& gp,
                                    double mu) {
  const auto mo = moment_optimum(gp, mu);
  return SellerResponse{mo.value, mo.witness, mo.contacts, mo.open_contact};
}

SaddleReport saddle_check(double price, const PiecewiseDistribution& h,
                          const PiecewiseDistribution& ghat,
                          const ModelParams& params, double tol) {
  SaddleReport rep;
  const auto f = nature_kernel(price, h, params);
  const double nature_opt = moment_optimum(f, params.effective_mean()).value;
  const double nature_attained = f.integrate_against(ghat);
  rep.nature_residual = std::abs(nature_attained - nature_opt);

  const auto gp = seller_kernel(price, ghat, params);
  const double seller_opt = moment_optimum(gp, params.mu).value;
  const double seller_attained = gp.integrate_against(h);
  rep.seller_residual = std::abs(seller_attained - seller_opt);

  rep.value = seller_attained;
  rep.pass = rep.nature_residual <= tol && rep.seller_residual <= tol;
  rep.detail = "nature " + std::to_string(rep.nature_residual) + ", seller " +
               std::to_string(rep.seller_residual);
  return rep;
}

GuaranteeReport fixed_price_guarantee_numeric(double price,
                                              const ModelParams& params) {
  const OptimalInfo info = optimal_info_for_price(price, params);
  const NatureResponse br = nature_best_response(price, info.dist, params);
  GuaranteeReport rep;
  rep.price = price;
  rep.seller_value = br.demand;
  rep.guarantee = price * br.demand;
  rep.worst_case = br.witness.dist;
  rep.regime = info.regime;
  rep.contacts = br.contacts;
  rep.open_contact = br.open_contact;
  return rep;
}

PiecewiseDistribution saddle_adversary(double price, const ModelParams& params) {
  using Atom = PiecewiseDistribution::Atom;
  using Segment = PiecewiseDistribution::Segment;
  const double c = params.effective_mean();
  const double top = params.effective_top();
  const double mu = params.mu;
  const OptimalInfo info = optimal_info_for_price(price, params);

  switch (info.kind) {
    case PolicyKind::Uniform: {
      // Two-point worst case at the hull contacts {0, 1-p}.
      if (c >= 1.0 - price - 1e-12) return PiecewiseDistribution::point_mass(c);
      const double q = c / (1.0 - price);
      return PiecewiseDistribution::make({{0.0, 1.0 - q}, {1.0 - price, q}}, {});
    }
    case PolicyKind::Degenerate:
      return PiecewiseDistribution::point_mass(c);
    case PolicyKind::Mixture:
    case PolicyKind::HhuFamily: {
      // Uniform density 2xi^2/(xi-s) with the balancing atom at zero; the
      // Seller dual is the affine line through (p+top, 1).
      const double beta = 2.0 * params.xi * params.xi / c;
      const double atom0 = 1.0 - beta * top;
      return PiecewiseDistribution::make({{0.0, atom0}},
                                         {{0.0, top, beta * top}});
    }
    case PolicyKind::Full:
    case PolicyKind::Binary: {
      // CDF min((p+z)/(p+top), q) capped by an atom at top; q from the mean.
      const double what = price + top;
      auto mean_of = [&](double q) {
        if (q <= price / what) {
          return (1.0 - q) * top;  // two atoms {0: q, top: 1-q}
        }
        const double zq = q * what - price;
        return 0.5 * zq * zq / what + (1.0 - q) * top;
      };
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_of(mid) >= c ? lo : hi) = mid;
      }
      const double q = 0.5 * (lo + hi);
      std::vector<Atom> atoms;
      std::vector<Segment> segs;
      if (q <= price / what) {
        atoms = {{0.0, q}, {top, 1.0 - q}};
      } else {
        const double zq = q * what - price;
        atoms.push_back({0.0, price / what});
        segs.push_back({0.0, zq, zq / what});
        if (1.0 - q > 1e-15) atoms.push_back({top, 1.0 - q});
      }
      return PiecewiseDistribution::make(std::move(atoms), std::move(segs));
    }
    case PolicyKind::WBarFamily: {
      const double wbar = info.wbar;
      const double span = wbar - price;
      std::vector<Atom> atoms;
      std::vector<Segment> segs;
      const bool at_one = price > params.deterrence_price() &&
                          wbar >= 1.0 - 1e-7 &&
                          price >= 1.0 - std::sqrt(2.0 * c) - 1e-12;
      if (!at_one && std::abs(wbar - (2.0 * mu - price)) <= 1e-7) {
        // Clamped at wbar = 2mu-p: dual alpha + beta*w with free intercept.
        const double beta = 2.0 * c / (span * span);
        const double alpha = 1.0 - beta * wbar;
        atoms.push_back({0.0, alpha + beta * price});
        segs.push_back({0.0, span, beta * span});
      } else if (at_one) {
        // wbar = 1: density through the origin-dual plus a top atom at 1-p.
        const double beta = 2.0 * (1.0 - price - c) / (1.0 - price * price);
        atoms.push_back({0.0, beta * price});
        segs.push_back({0.0, 1.0 - price, beta * (1.0 - price)});
        if (1.0 - beta > 1e-15) atoms.push_back({1.0 - price, 1.0 - beta});
      } else {
        // Interior optimum: recompute it in closed form so the mean is exact.
        const double wstar =
            price + c + std::sqrt(c * (c + 2.0 * price));
        atoms.push_back({0.0, price / wstar});
        segs.push_back({0.0, wstar - price, (wstar - price) / wstar});
      }
      return PiecewiseDistribution::make(std::move(atoms), std::move(segs));
    }
    case PolicyKind::Custom:
      break;
  }
  throw Error("saddle_adversary: unsupported policy kind");
}

}  // namespace rsell

#include "rsell/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rsell/errors.hpp"
#include "rsell/game.hpp"

namespace rsell {

namespace {

constexpr double kTieTol = 1e-10;

double rtd_guarantee(double mu, double xi, double s) {
  return s / xi - 2.0 * s * xi * (1.0 - mu) / (xi - s);
}

// Auxiliary boundary of the Phi(p) case split; the whole sum over 4.
double t_aux(double mu, double c) {
  return (c + std::sqrt(c * (c + 8.0 * mu))) / 4.0;
}

struct Crossing {
  std::optional<double> at;
  bool boundary = false;
};

// First mu in [lo, 1] where diff(mu) >= 0. Pre-scans 1000 points and insists
// on a single sign change.
Crossing first_crossing(const std::function<double(double)>& diff, double lo) {
  const int n = 1000;
  Crossing out;
  int changes = 0;
  double prev = diff(lo);
  double bracket_lo = lo, bracket_hi = lo;
  bool found = prev >= 0.0;
  if (found) {
    out.at = lo;
    return out;
  }
  for (int i = 1; i <= n; ++i) {
    const double mu = lo + (1.0 - lo) * static_cast<double>(i) / n;
    const double d = diff(mu);
    if ((prev < 0.0) != (d < 0.0)) {
      ++changes;
      if (changes == 1) {
        bracket_lo = lo + (1.0 - lo) * static_cast<double>(i - 1) / n;
        bracket_hi = mu;
        found = true;
      }
    }
    prev = d;
  }
  if (changes > 1) {
    throw SingleCrossingViolation(
        "cutoff_search: guarantee difference crosses zero more than once");
  }
  if (!found) {
    if (std::abs(diff(1.0)) <= kTieTol) {
      out.at = 1.0;
      out.boundary = true;
    }
    return out;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    (diff(mid) < 0.0 ? bracket_lo : bracket_hi) = mid;
  }
  out.at = 0.5 * (bracket_lo + bracket_hi);
  out.boundary = std::abs(*out.at - 1.0) < 1e-9;
  return out;
}

}  // namespace

std::string to_string(Region r) {
  switch (r) {
    case Region::FullInfoAll: return "FullInfoAll";
    case Region::UniformAll: return "UniformAll";
    case Region::CutoffFull: return "CutoffFull";
    case Region::CutoffMixture: return "CutoffMixture";
  }
  return "?";
}

double threshold_b1(double xi) { return xi * (xi - 1.0) * (xi - 1.0) / (xi * xi + 1.0); }
double threshold_b2(double xi) { return xi * (xi - 1.0) * (xi - 1.0) / ((xi + 1.0) * (xi + 1.0)); }
double threshold_b3(double xi) { return xi - 2.0 * xi * xi; }

double mu_low_threshold(const ModelParams& p) {
  const double c = p.effective_mean();
  return (2.0 - c - std::sqrt(2.0 * c - c * c)) / (2.0 * (1.0 - c));
}

double mu_high_threshold(const ModelParams& p) {
  return 1.0 - std::sqrt(p.effective_mean()) / 2.0;
}

double price_star(const ModelParams& p) {
  const double c = p.effective_mean();
  if (p.mu <= mu_low_threshold(p)) {
    return (1.0 - std::sqrt(2.0 * c - c * c)) / (1.0 - c);
  }
  if (p.mu <= mu_high_threshold(p)) return 2.0 * p.mu - 1.0;
  return 1.0 - std::sqrt(c);
}

double pi_h_guarantee(const ModelParams& p) {
  const double c = p.effective_mean();
  if (p.mu <= mu_low_threshold(p)) {
    return p.mu * (1.0 - std::sqrt(2.0 * c - c * c));
  }
  if (p.mu <= mu_high_threshold(p)) {
    return (2.0 * p.mu - 1.0) * (1.0 - c / (2.0 - 2.0 * p.mu));
  }
  const double r = 1.0 - std::sqrt(c);
  return r * r;
}

double mixture_guarantee(const ModelParams& p) {
  return rtd_guarantee(p.mu, p.xi, p.s);
}

RegionThresholds thresholds(const ModelParams& p) {
  RegionThresholds th;
  th.B1 = threshold_b1(p.xi);
  th.B2 = threshold_b2(p.xi);
  th.B3 = threshold_b3(p.xi);
  th.mu_low = mu_low_threshold(p);
  th.mu_high = mu_high_threshold(p);
  if (p.s >= th.B1) {
    th.region = Region::FullInfoAll;
  } else if (p.s < th.B2) {
    th.region = Region::UniformAll;
  } else if (p.s < th.B3) {
    th.region = Region::CutoffMixture;
  } else {
    th.region = Region::CutoffFull;
  }
  if (th.region == Region::CutoffFull || th.region == Region::CutoffMixture) {
    const Cutoffs cut = cutoff_search(p);
    th.mu_hat = cut.mu_hat;
    th.mu_check = cut.mu_check;
    th.cutoff_at_boundary = cut.at_boundary;
  }
  return th;
}

PiecewiseDistribution make_policy(PolicyKind kind, const ModelParams& p,
                                  double price, double wbar) {
  using Atom = PiecewiseDistribution::Atom;
  const double mu = p.mu;
  const double c = p.effective_mean();
  const double top = p.effective_top();

  switch (kind) {
    case PolicyKind::Uniform: {
      if (mu > mu_high_threshold(p)) {
        return PiecewiseDistribution::make({}, {{2.0 * mu - 1.0, 1.0, 1.0}});
      }
      if (mu > (1.0 + price) / 2.0 + 1e-12) {
        throw InvalidRegion("Uniform: mu exceeds (1+p)/2; atom at 0 negative");
      }
      const double seg = 2.0 * mu / (1.0 + price);
      return PiecewiseDistribution::make({{0.0, 1.0 - seg}},
                                         {{price, 1.0, seg}});
    }
    case PolicyKind::Full:
      return PiecewiseDistribution::make({{0.0, 1.0 - mu}, {1.0, mu}}, {});
    case PolicyKind::Mixture: {
      if (mu < (1.0 + p.deterrence_price()) / 2.0 - 1e-12) {
        throw InvalidRegion("Mixture: requires mu >= (1+s/xi)/2");
      }
      const double pstar2 = p.deterrence_price();
      const double seg = 2.0 * p.xi * (1.0 - mu) / c;  // density * (1-p**)
      return PiecewiseDistribution::make({{1.0, 1.0 - seg}},
                                         {{pstar2, 1.0, seg}});
    }
    case PolicyKind::Binary: {
      const double what = price + top;
      if (price > p.deterrence_price() + 1e-12) {
        throw InvalidRegion("Binary: requires p <= s/xi");
      }
      if (mu > what + 1e-12) {
        throw InvalidRegion("Binary: mu exceeds the top atom location");
      }
      const double m = std::min(mu / what, 1.0);
      return PiecewiseDistribution::make({{0.0, 1.0 - m}, {what, m}}, {});
    }
    case PolicyKind::Degenerate:
      return PiecewiseDistribution::point_mass(mu);
    case PolicyKind::WBarFamily: {
      if (wbar <= price + 1e-15 || wbar > 1.0 + 1e-12 ||
          wbar < 2.0 * mu - price - 1e-9) {
        throw InvalidRegion("WBarFamily: wbar outside [max(2mu-p,p), 1]");
      }
      const double seg = 2.0 * mu / (wbar + price);
      std::vector<Atom> atoms;
      if (1.0 - seg > 1e-15) atoms.push_back({0.0, 1.0 - seg});
      return PiecewiseDistribution::make(std::move(atoms),
                                         {{price, std::min(wbar, 1.0), seg}});
    }
    case PolicyKind::HhuFamily: {
      const double what = price + top;
      if (price > p.deterrence_price() + 1e-12) {
        throw InvalidRegion("HhuFamily: requires p <= s/xi");
      }
      if (mu < price + top / 2.0 - 1e-12 || mu > what + 1e-12) {
        throw InvalidRegion("HhuFamily: requires p + (1-s/xi)/2 <= mu < p + 1-s/xi");
      }
      const double dens =
          2.0 * (p.xi * p.xi * (price + 1.0 - mu) - p.s * p.xi) / (c * c);
      const double seg = dens * top;
      std::vector<Atom> atoms;
      if (1.0 - seg > 1e-15) atoms.push_back({what, 1.0 - seg});
      return PiecewiseDistribution::make(std::move(atoms),
                                         {{price, what, seg}});
    }
    case PolicyKind::Custom:
      break;
  }
  throw InvalidRegion("make_policy: unsupported kind");
}

double w_bar_solve(double price, const ModelParams& p) {
  const double lo = std::max(2.0 * p.mu - price, price + 1e-9);
  const double hi = price > p.deterrence_price()
                        ? 1.0
                        : price + p.effective_top();
  if (lo >= hi - 1e-12) return hi;
  auto demand_of = [&](double wbar) {
    const auto h = make_policy(PolicyKind::WBarFamily, p, price, wbar);
    return nature_best_response(price, h, p).demand;
  };
  // The demand is flat at zero left of p + (xi-s), which defeats plain
  // golden section (equal probes discard the rising tail). Iterative grid
  // refinement keeps the argmax bracketed whatever the plateau structure;
  // ties break toward the larger wbar.
  double blo = lo, bhi = hi;
  double best_w = hi;
  for (int round = 0; round < 14; ++round) {
    const int n = round == 0 ? 64 : 16;
    int best = n;
    double best_val = -1.0;
    for (int i = n; i >= 0; --i) {
      const double w = blo + (bhi - blo) * static_cast<double>(i) / n;
      const double v = demand_of(w);
      if (v > best_val + 1e-15) {
        best_val = v;
        best = i;
      }
    }
    best_w = blo + (bhi - blo) * static_cast<double>(best) / n;
    const double nlo =
        blo + (bhi - blo) * static_cast<double>(std::max(best - 1, 0)) / n;
    const double nhi =
        blo + (bhi - blo) * static_cast<double>(std::min(best + 1, n)) / n;
    blo = nlo;
    bhi = nhi;
    if (bhi - blo < 1e-12) break;
  }
  return best_w;
}

OptimalInfo optimal_info_for_price(double price, const ModelParams& p) {
  OptimalInfo out;
  const double c = p.effective_mean();
  const double top = p.effective_top();
  if (price >= 1.0 - 1e-12) {
    // Nobody can be left with positive surplus: demand is zero for every
    // policy, so any Bayes-plausible distribution is (vacuously) optimal.
    out.dist = make_policy(PolicyKind::Degenerate, p);
    out.kind = PolicyKind::Degenerate;
    out.regime = "p~1";
    return out;
  }
  if (price > p.deterrence_price()) {
    if (p.mu > (1.0 + price) / 2.0) {
      out.dist =
          PiecewiseDistribution::make({}, {{2.0 * p.mu - 1.0, 1.0, 1.0}});
      out.kind = PolicyKind::Uniform;
      out.regime = "p<2mu-1";
      return out;
    }
    const double wbar = w_bar_solve(price, p);
    out.dist = make_policy(PolicyKind::WBarFamily, p, price, wbar);
    out.kind = PolicyKind::WBarFamily;
    out.wbar = wbar;
    if (price >= 1.0 - std::sqrt(2.0 * c) - 1e-9) {
      out.regime = "p>=1-sqrt(2(xi-s))";
    } else if (std::abs(wbar - (2.0 * p.mu - price)) <= 1e-7) {
      out.regime = "2mu-1<=p<mu-t";
    } else {
      out.regime = "mu-t<=p<1-sqrt(2(xi-s))";
    }
    return out;
  }
  if (p.mu >= price + top - 1e-12) {
    out.dist = make_policy(PolicyKind::Degenerate, p);
    out.kind = PolicyKind::Degenerate;
    out.regime = "degenerate";
    return out;
  }
  const double binary_floor =
      (1.0 - 2.0 * p.xi) * c / (2.0 * p.xi * p.xi);
  if (price >= binary_floor - 1e-15) {
    out.dist = make_policy(PolicyKind::Binary, p, price);
    out.kind = price + top >= 1.0 - 1e-12 ? PolicyKind::Full : PolicyKind::Binary;
    out.regime = "binary";
    return out;
  }
  if (p.mu >= price + top / 2.0) {
    out.dist = make_policy(PolicyKind::HhuFamily, p, price);
    out.kind = PolicyKind::HhuFamily;
    out.regime = "hhu";
    return out;
  }
  const double wbar = w_bar_solve(price, p);
  out.dist = make_policy(PolicyKind::WBarFamily, p, price, wbar);
  out.kind = PolicyKind::WBarFamily;
  out.wbar = wbar;
  out.regime = "wbar-low";
  return out;
}

double fixed_price_guarantee_formula(double price, const ModelParams& p) {
  const double mu = p.mu;
  const double c = p.effective_mean();
  const double top = p.effective_top();
  if (price > p.deterrence_price()) {
    if (price < 2.0 * mu - 1.0) {
      return price * std::max(0.0, 1.0 - c / (1.0 - price));
    }
    if (price < mu - t_aux(mu, c)) {
      return price * std::max(0.0, 1.0 - c / (2.0 * (mu - price)));
    }
    if (price < 1.0 - std::sqrt(2.0 * c)) {
      return price * mu / (std::sqrt(c * (c + 2.0 * price)) + c + price);
    }
    return 2.0 * mu * price / (1.0 + price) *
           std::max(0.0, 1.0 - c / (1.0 - price));
  }
  if (mu >= price + top - 1e-12) return price;
  const double binary_floor = (1.0 - 2.0 * p.xi) * c / (2.0 * p.xi * p.xi);
  if (price >= binary_floor - 1e-15) {
    return price * mu * p.xi / (p.xi * (1.0 + price) - p.s);
  }
  if (mu >= price + top / 2.0) {
    return price *
           (1.0 - 2.0 * p.xi * (p.xi * (price + 1.0 - mu) - p.s) / c);
  }
  // Low-price wbar family: the same two middle pieces evaluated at this p.
  if (mu > price && c <= 2.0 * (mu - price) * (mu - price) / (2.0 * mu - price)) {
    return price * std::max(0.0, 1.0 - c / (2.0 * (mu - price)));
  }
  return price * mu / (std::sqrt(c * (c + 2.0 * price)) + c + price);
}

Cutoffs cutoff_search(const ModelParams& p) {
  const double b1 = threshold_b1(p.xi);
  const double b2 = threshold_b2(p.xi);
  if (p.s >= b1) {
    throw RegionMismatch("cutoff_search: s >= B1, full information everywhere");
  }
  if (p.s < b2) return {};  // defining sets are empty below B2
  Cutoffs out;
  auto pih_at = [&](double mu) {
    return pi_h_guarantee(ModelParams{mu, p.xi, p.s});
  };
  const Crossing hat = first_crossing(
      [&](double mu) { return mu * p.s / p.xi - pih_at(mu); }, 1e-6);
  out.mu_hat = hat.at;
  const double mix_lo = (1.0 + p.deterrence_price()) / 2.0;
  const Crossing chk = first_crossing(
      [&](double mu) { return rtd_guarantee(mu, p.xi, p.s) - pih_at(mu); },
      mix_lo);
  out.mu_check = chk.at;
  out.at_boundary = hat.boundary || chk.boundary;
  return out;
}

RobustSolution robust_strategy(const ModelParams& p) {
  RobustSolution sol;
  sol.thres = thresholds(p);
  sol.region = sol.thres.region;
  const double pih = pi_h_guarantee(p);
  const double full_guar = p.mu * p.s / p.xi;
  const double mix_guar = mixture_guarantee(p);
  const double pss = p.deterrence_price();

  bool deter_full = false, deter_mix = false;
  switch (sol.region) {
    case Region::FullInfoAll:
      deter_full = true;
      break;
    case Region::UniformAll:
      break;
    case Region::CutoffFull:
      deter_full = full_guar >= pih - kTieTol;
      break;
    case Region::CutoffMixture:
      deter_mix = p.mu >= (1.0 + pss) / 2.0 - 1e-12 && mix_guar >= pih - kTieTol;
      break;
  }

  if (deter_full) {
    sol.strategy = {pss, make_policy(PolicyKind::Full, p), PolicyKind::Full};
    sol.guarantee = full_guar;
  } else if (deter_mix) {
    sol.strategy = {pss, make_policy(PolicyKind::Mixture, p, pss),
                    PolicyKind::Mixture};
    sol.guarantee = mix_guar;
  } else {
    const double ps = price_star(p);
    if (ps <= pss) {
      throw Error("robust_strategy: p* <= s/xi, postcondition violated");
    }
    sol.strategy = {ps, make_policy(PolicyKind::Uniform, p, ps),
                    PolicyKind::Uniform};
    sol.guarantee = pih;
  }
  return sol;
}

}  // namespace rsell

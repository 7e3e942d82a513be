#include "rsell/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rsell/errors.hpp"
#include "rsell/simplex.hpp"

namespace rsell {

namespace {

constexpr double kSupportEps = 1e-11;

// The per-a slave problem: minimize sum q_i * cost_i + q_a * cost_a subject
// to sum q = 1, sum q z = mean, q_a (1-a) >= s, q >= 0.
struct BlockResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> q;  // aligned with z below a; last entry is q_a
};

BlockResult solve_block(const std::vector<double>& z,
                        const std::vector<double>& cost, double a,
                        double cost_a, double mean, double s) {
  const std::size_t nz = z.size();
  std::vector<double> c(cost);
  c.push_back(cost_a);
  std::vector<std::vector<double>> a_eq(2, std::vector<double>(nz + 1, 0.0));
  for (std::size_t i = 0; i < nz; ++i) {
    a_eq[0][i] = 1.0;
    a_eq[1][i] = z[i];
  }
  a_eq[0][nz] = 1.0;
  a_eq[1][nz] = a;
  std::vector<std::vector<double>> a_ge(1, std::vector<double>(nz + 1, 0.0));
  a_ge[0][nz] = 1.0 - a;
  const LpSolution lp =
      simplex_solve(c, a_eq, {1.0, mean}, a_ge, {s});
  BlockResult out;
  if (lp.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.value = lp.objective;
  out.q = lp.x;
  return out;
}

}  // namespace

std::vector<double> GridSpec::build() const {
  if (n_points < 10) throw Error("GridSpec: n_points must be at least 10");
  std::vector<double> xs;
  xs.reserve(n_points + includes.size());
  for (std::size_t i = 0; i < n_points; ++i) {
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(n_points - 1));
  }
  for (double v : includes) {
    if (v >= lo && v <= hi) xs.push_back(v);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double x, double y) { return std::abs(x - y) <= 1e-13; }),
           xs.end());
  return xs;
}

OracleResult nature_worst_case_oracle(double price,
                                      const PiecewiseDistribution& h,
                                      const ModelParams& params,
                                      std::size_t n_points) {
  const double mean = params.effective_mean();
  const double top = params.effective_top();

  GridSpec zspec{n_points, 0.0, top, {mean}};
  for (double b : h.breakpoints()) zspec.includes.push_back(b - price);
  const std::vector<double> zs = zspec.build();
  GridSpec aspec{n_points, mean, top, {}};
  for (double b : h.breakpoints()) aspec.includes.push_back(b - price);
  const std::vector<double> as = aspec.build();

  // Demand contribution of a buy-later mass point at z (strict return rule).
  std::vector<double> later(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    later[i] = 1.0 - h.cdf(h.snap_to_breakpoint(price + zs[i]), Side::Right);
  }

  OracleResult best;
  bool any = false;
  for (double a : as) {
    std::vector<double> z_below, cost_below;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (zs[i] < a - 1e-13) {
        z_below.push_back(zs[i]);
        cost_below.push_back(later[i]);
      }
    }
    // Buy-now at the reservation atom is the weak rule (left limit).
    const double wa = h.snap_to_breakpoint(price + a);
    const double cost_a = 1.0 - (h.cdf(wa, Side::Right) - h.atom_mass_at(wa));
    const BlockResult blk =
        solve_block(z_below, cost_below, a, cost_a, mean, params.s);
    if (!blk.feasible) continue;
    if (!any || blk.value < best.demand) {
      any = true;
      best.demand = blk.value;
      best.witness.a = a;
      best.witness.locations.clear();
      best.witness.masses.clear();
      for (std::size_t i = 0; i < z_below.size(); ++i) {
        if (blk.q[i] > kSupportEps) {
          best.witness.locations.push_back(z_below[i]);
          best.witness.masses.push_back(blk.q[i]);
        }
      }
      best.witness.atom_mass = blk.q.back();
      best.witness.locations.push_back(a);
      best.witness.masses.push_back(blk.q.back());
    }
  }
  if (!any) {
    throw Infeasible("nature_worst_case_oracle: no feasible reservation value");
  }
  return best;
}

double minimax_oracle(double price, const ModelParams& params,
                      std::size_t posterior_points,
                      std::size_t adversary_points) {
  const double mean = params.effective_mean();
  const double top = params.effective_top();
  const double mu = params.mu;

  GridSpec wspec{posterior_points, 0.0, 1.0, {mu, price, price + mean}};
  if (2.0 * mu - 1.0 > 0.0) wspec.includes.push_back(2.0 * mu - 1.0);
  if (price + top <= 1.0) wspec.includes.push_back(price + top);
  const std::vector<double> ws = wspec.build();

  GridSpec zspec{adversary_points, 0.0, top, {mean}};
  const std::vector<double> zs = zspec.build();
  GridSpec aspec{adversary_points, mean, top, {}};
  const std::vector<double> as = aspec.build();

  // Nature best response to a posterior mixture: exact min over the blocks.
  struct NatureCut {
    std::vector<double> buy;  // buy probability per posterior grid point
    double value = 0.0;
  };
  auto nature_response = [&](const std::vector<double>& hmass) {
    // Mass of posteriors strictly above x: suffix sums over the sorted grid.
    auto mass_above = [&](double x, bool weak) {
      double acc = 0.0;
      for (std::size_t j = ws.size(); j-- > 0;) {
        const double w = ws[j];
        if (w > x + 1e-13 || (weak && w >= x - 1e-13)) {
          acc += hmass[j];
        } else {
          break;
        }
      }
      return acc;
    };
    std::vector<double> later(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
      later[i] = mass_above(price + zs[i], false);
    }
    NatureCut cut;
    bool any = false;
    double best_val = 0.0;
    std::vector<double> best_z, best_q;
    double best_a = 0.0, best_qa = 0.0;
    for (double a : as) {
      std::vector<double> z_below, cost_below;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] < a - 1e-13) {
          z_below.push_back(zs[i]);
          cost_below.push_back(later[i]);
        }
      }
      const double da = mass_above(price + a, true);
      const BlockResult blk =
          solve_block(z_below, cost_below, a, da, mean, params.s);
      if (!blk.feasible) continue;
      if (!any || blk.value < best_val) {
        any = true;
        best_val = blk.value;
        best_z = z_below;
        best_q = blk.q;
        best_a = a;
        best_qa = blk.q.back();
      }
    }
    if (!any) throw Infeasible("minimax_oracle: empty adversary set");
    cut.value = best_val;
    cut.buy.assign(ws.size(), 0.0);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      double buy = 0.0;
      for (std::size_t i = 0; i < best_z.size(); ++i) {
        if (ws[j] > price + best_z[i] + 1e-13) buy += best_q[i];
      }
      if (ws[j] >= price + best_a - 1e-13) buy += best_qa;
      cut.buy[j] = buy;
    }
    return cut;
  };

  // Cutting-plane loop: Seller's master LP against the accumulated cuts.
  std::vector<NatureCut> cuts;
  std::vector<double> hmass(ws.size(), 0.0);
  {  // initial posterior: all mass at mu
    std::size_t jmu = 0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (std::abs(ws[j] - mu) < std::abs(ws[jmu] - mu)) jmu = j;
    }
    hmass[jmu] = 1.0;
  }
  double lower = 0.0;
  double prev_lower = -1.0, prev_upper = 2.0;
  for (int round = 0; round < 200; ++round) {
    NatureCut cut = nature_response(hmass);
    lower = cut.value;
    cuts.push_back(std::move(cut));

    // max V s.t. V <= sum_j h_j buy_kj for all cuts, sum h = 1, sum h w = mu.
    const std::size_t nv = ws.size() + 1;  // h..., V
    std::vector<double> c(nv, 0.0);
    c[nv - 1] = -1.0;
    std::vector<std::vector<double>> a_eq(2, std::vector<double>(nv, 0.0));
    for (std::size_t j = 0; j < ws.size(); ++j) {
      a_eq[0][j] = 1.0;
      a_eq[1][j] = ws[j];
    }
    std::vector<std::vector<double>> a_ge;
    std::vector<double> b_ge;
    for (const auto& k : cuts) {
      std::vector<double> row(nv, 0.0);
      for (std::size_t j = 0; j < ws.size(); ++j) row[j] = k.buy[j];
      row[nv - 1] = -1.0;
      a_ge.push_back(std::move(row));
      b_ge.push_back(0.0);
    }
    const LpSolution lp = simplex_solve(c, a_eq, {1.0, mu}, a_ge, b_ge);
    if (lp.status != LpStatus::Optimal) {
      throw Error("minimax_oracle: master LP failed");
    }
    const double upper = lp.x[nv - 1];
    for (std::size_t j = 0; j < ws.size(); ++j) hmass[j] = lp.x[j];
    if (upper - lower <= 1e-9) return lower;
    if (std::abs(upper - prev_upper) < 1e-14 &&
        std::abs(lower - prev_lower) < 1e-14) {
      break;  // duplicate cut; the bounds cannot move any further
    }
    prev_upper = upper;
    prev_lower = lower;
  }
  return lower;
}

}  // namespace rsell

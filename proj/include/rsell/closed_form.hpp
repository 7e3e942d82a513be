#pragma once

#include <optional>
#include <string>

#include "rsell/distribution.hpp"
#include "rsell/model.hpp"

namespace rsell {

enum class Region {
  FullInfoAll,     // s >= B1
  UniformAll,      // s < B2
  CutoffFull,      // B3 <= s < B1 (and s >= B2): full information above mu_hat
  CutoffMixture,   // B2 <= s < B3: mixture information above mu_check
};

std::string to_string(Region r);

struct RegionThresholds {
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;
  double mu_low = 0.0;   // lower prior threshold in the p* formula
  double mu_high = 0.0;  // upper prior threshold in the p* formula
  Region region = Region::UniformAll;
  std::optional<double> mu_hat;    // uniform-vs-full cutoff, when defined
  std::optional<double> mu_check;  // uniform-vs-mixture cutoff, when defined
  std::optional<double> s_hat;     // price-jump point; filled by comparative
  bool cutoff_at_boundary = false; // cutoff equals 1 within tolerance
};

double threshold_b1(double xi);
double threshold_b2(double xi);
double threshold_b3(double xi);

/// mu_low and mu_high of the p* case split.
double mu_low_threshold(const ModelParams& p);
double mu_high_threshold(const ModelParams& p);

/// The no-deterrence robust price p* (three branches).
double price_star(const ModelParams& p);

/// Revenue guarantee of the best p > s/xi strategy (three branches).
double pi_h_guarantee(const ModelParams& p);

/// Revenue guarantee of mixture information at p** = s/xi.
double mixture_guarantee(const ModelParams& p);

/// Evaluates thresholds, classifies the region, and fills the cutoffs when in
/// a cutoff region. s_hat is left unset (see comparative::jump_threshold).
RegionThresholds thresholds(const ModelParams& p);

/// Builds one of the named posterior distributions. `price` is used by the
/// price-indexed families (Uniform below mu_high, Binary, WBarFamily,
/// HhuFamily); `wbar` only by WBarFamily. Throws InvalidRegion when the
/// parameters violate the policy's validity condition.
PiecewiseDistribution make_policy(PolicyKind kind, const ModelParams& p,
                                  double price = 0.0, double wbar = 0.0);

struct OptimalInfo {
  PiecewiseDistribution dist;
  PolicyKind kind = PolicyKind::Custom;
  std::string regime;
  double wbar = 0.0;  // meaningful for the WBar family only
};

/// The revenue-guarantee-maximizing information policy at a fixed price.
OptimalInfo optimal_info_for_price(double price, const ModelParams& p);

/// Maximizes worst-case revenue of the H_wbar family over wbar in its bracket
/// by golden-section search on the nature-best-response demand.
double w_bar_solve(double price, const ModelParams& p);

/// Piecewise closed form of the fixed-price guarantee Phi(p).
double fixed_price_guarantee_formula(double price, const ModelParams& p);

struct Cutoffs {
  std::optional<double> mu_hat;
  std::optional<double> mu_check;
  bool at_boundary = false;
};

/// Infima of the priors at which a deterrence policy (full resp. mixture)
/// overtakes the best p > s/xi strategy. Requires B2 <= s < B1.
Cutoffs cutoff_search(const ModelParams& p);

struct RobustSolution {
  SellingStrategy strategy;
  double guarantee = 0.0;
  Region region = Region::UniformAll;
  RegionThresholds thres;
};

/// The robustly optimal selling strategy (price + information policy) and its
/// guarantee. Ties between candidates resolve to the deterrence policy.
RobustSolution robust_strategy(const ModelParams& p);

}  // namespace rsell

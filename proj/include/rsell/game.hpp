#pragma once

#include <string>
#include <vector>

#include "rsell/concavify.hpp"
#include "rsell/distribution.hpp"
#include "rsell/model.hpp"
#include "rsell/search.hpp"

namespace rsell {

/// Nature's side of the fixed-price game: z -> H(p+z) on [0, 1-s/xi],
/// right-continuous, except that an H-atom exactly at p+1-s/xi with
/// p <= s/xi buys immediately, so the endpoint takes the left limit.
PiecewiseScalarFunction nature_kernel(double price,
                                      const PiecewiseDistribution& h,
                                      const ModelParams& params);

/// Seller's side: the shifted adversary CDF G_p on [0,1]. Atoms of Ghat are
/// credited with left limits (the buyer returns only on w - p > v), and the
/// kernel closes to 1 from w = p+1-s/xi on (the deterred atom buys).
PiecewiseScalarFunction seller_kernel(double price,
                                      const PiecewiseDistribution& ghat,
                                      const ModelParams& params);

struct NatureResponse {
  double value = 0.0;   // \int H(p+z) dGhat at the optimum (no-purchase mass)
  double demand = 0.0;  // 1 - value
  EffectiveOutsideOption witness;
  std::vector<double> contacts;
  bool open_contact = false;
};

/// Worst case over effective outside options with mean xi-s (problem of
/// maximizing \int H(p+z) dGhat).
NatureResponse nature_best_response(double price, const PiecewiseDistribution& h,
                                    const ModelParams& params);

struct SellerResponse {
  double value = 0.0;  // best attainable \int G_p dH over mean-mu posteriors
  PiecewiseDistribution witness;
  std::vector<double> contacts;
  bool open_contact = false;
};

SellerResponse seller_best_response(const PiecewiseScalarFunction& gp, double mu);

struct SaddleReport {
  bool pass = false;
  double nature_residual = 0.0;  // condition (i)
  double seller_residual = 0.0;  // condition (ii)
  double value = 0.0;            // demand at the candidate pair
  std::string detail;
};

/// Verifies both equilibrium conditions: Ghat attains the nature best
/// response against H, and H attains the seller best response against the
/// kernel built from Ghat.
SaddleReport saddle_check(double price, const PiecewiseDistribution& h,
                          const PiecewiseDistribution& ghat,
                          const ModelParams& params, double tol = 1e-8);

struct GuaranteeReport {
  double price = 0.0;
  double guarantee = 0.0;     // worst-case revenue p * demand
  double seller_value = 0.0;  // worst-case demand
  PiecewiseDistribution worst_case;
  std::string regime;
  std::vector<double> contacts;
  bool open_contact = false;
};

/// Numeric fixed-price guarantee: construct the optimal policy for the price,
/// then evaluate its worst case via nature_best_response.
GuaranteeReport fixed_price_guarantee_numeric(double price,
                                              const ModelParams& params);

/// Closed-form worst-case adversary supporting the optimal policy at this
/// price as a saddle point (both equilibrium conditions hold at ~1e-12).
PiecewiseDistribution saddle_adversary(double price, const ModelParams& params);

}  // namespace rsell

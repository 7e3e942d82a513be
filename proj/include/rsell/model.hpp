#pragma once

#include <string>

#include "rsell/distribution.hpp"

namespace rsell {

/// The primitive triple: prior mean match value, outside-option mean, and
/// search cost, with 0 < mu < 1, 0 < xi < 1, 0 <= s < xi.
struct ModelParams {
  double mu;
  double xi;
  double s;

  /// Mean of the effective outside option, xi - s.
  double effective_mean() const { return xi - s; }
  /// Upper bound of the effective support (maximal reservation value), 1 - s/xi.
  double effective_top() const { return 1.0 - s / xi; }
  /// Deterrence price bound s/xi.
  double deterrence_price() const { return s / xi; }
};

/// Validates the bounds and returns the params, or throws OutOfRange naming
/// the offending field.
ModelParams validate_params(double mu, double xi, double s);

enum class PolicyKind {
  Uniform,
  Full,
  Mixture,
  Binary,
  Degenerate,
  WBarFamily,
  HhuFamily,
  Custom,
};

std::string to_string(PolicyKind k);
PolicyKind policy_kind_from_string(const std::string& s);

/// A price paired with a Bayes-plausible distribution over posteriors.
struct SellingStrategy {
  double price = 0.0;
  PiecewiseDistribution posterior_dist;
  PolicyKind kind = PolicyKind::Custom;
};

}  // namespace rsell

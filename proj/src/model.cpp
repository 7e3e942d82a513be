#include "rsell/model.hpp"

#include "rsell/errors.hpp"

namespace rsell {

ModelParams validate_params(double mu, double xi, double s) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw OutOfRange("mu", "mu must lie in (0,1), got " + std::to_string(mu));
  }
  if (!(xi > 0.0 && xi < 1.0)) {
    throw OutOfRange("xi", "xi must lie in (0,1), got " + std::to_string(xi));
  }
  if (!(s >= 0.0 && s < xi)) {
    throw OutOfRange("s", "s < xi violated (s=" + std::to_string(s) +
                              ", xi=" + std::to_string(xi) + ")");
  }
  return ModelParams{mu, xi, s};
}

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Uniform: return "Uniform";
    case PolicyKind::Full: return "Full";
    case PolicyKind::Mixture: return "Mixture";
    case PolicyKind::Binary: return "Binary";
    case PolicyKind::Degenerate: return "Degenerate";
    case PolicyKind::WBarFamily: return "WBarFamily";
    case PolicyKind::HhuFamily: return "HhuFamily";
    case PolicyKind::Custom: return "Custom";
  }
  return "?";
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "Uniform") return PolicyKind::Uniform;
  if (s == "Full") return PolicyKind::Full;
  if (s == "Mixture") return PolicyKind::Mixture;
  if (s == "Binary") return PolicyKind::Binary;
  if (s == "Degenerate") return PolicyKind::Degenerate;
  if (s == "WBarFamily") return PolicyKind::WBarFamily;
  if (s == "HhuFamily") return PolicyKind::HhuFamily;
  return PolicyKind::Custom;
}

}  // namespace rsell

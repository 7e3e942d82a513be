#pragma once

#include <cstddef>
#include <vector>

#include "rsell/distribution.hpp"

namespace rsell {

/// A bounded piecewise-linear function on [lo, hi] with finitely many jumps.
/// Breakpoints x[0..n] carry explicit point values (which may differ from
/// either one-sided limit at a jump); between consecutive breakpoints the
/// function is affine with the stored slope/intercept.
class PiecewiseScalarFunction {
 public:
  PiecewiseScalarFunction() = default;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  std::size_t piece_count() const { return slope_.size(); }
  const std::vector<double>& breakpoints() const { return x_; }

  double eval(double t) const;
  double value_at(std::size_t k) const { return value_[k]; }
  double left_limit(std::size_t k) const;
  double right_limit(std::size_t k) const;
  /// Upper-semicontinuous closure at breakpoint k: max of the point value and
  /// both one-sided limits.
  double usc_value(std::size_t k) const;
  double usc_eval(double t) const;

  /// \int f dF against atoms-plus-segments F, exact on pieces. Atom locations
  /// use the point values of f.
  double integrate_against(const PiecewiseDistribution& f) const;

  /// Single affine piece a*t + b on [lo, hi].
  static PiecewiseScalarFunction affine(double lo, double hi, double a, double b);
  /// Continuous piecewise-linear interpolation through (x_k, y_k).
  static PiecewiseScalarFunction interpolate(std::vector<double> xs,
                                             std::vector<double> ys);
  /// Full control: breakpoints, point values, per-piece slope/intercept.
  static PiecewiseScalarFunction raw(std::vector<double> xs,
                                     std::vector<double> values,
                                     std::vector<double> slopes,
                                     std::vector<double> intercepts);

 private:
  std::vector<double> x_;
  std::vector<double> value_;
  std::vector<double> slope_;      // size x_.size() - 1
  std::vector<double> intercept_;  // size x_.size() - 1

  std::size_t piece_index(double t) const;
};

/// Pointwise-smallest concave, upper-semicontinuous majorant. Exact for
/// piecewise-linear input: the upper convex hull (monotone chain) of the
/// breakpoint vertex set, with jump values closed from above.
PiecewiseScalarFunction upper_concave_envelope(const PiecewiseScalarFunction& f);

struct MomentOptimum {
  double value = 0.0;
  PiecewiseDistribution witness;  // at most two contact atoms, mean m
  std::vector<double> contacts;
  /// True when a contact uses the closure value at a jump that f itself does
  /// not attain (an atom placed exactly at the jump location).
  bool open_contact = false;
};

/// max \int f dF over distributions F on the domain with mean m: the envelope
/// evaluated at m, with a witness supported on contact points.
/// Throws NoContact if the contact search fails at tolerance 1e-10.
MomentOptimum moment_optimum(const PiecewiseScalarFunction& f, double m);

}  // namespace rsell

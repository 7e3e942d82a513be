#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rsell {

enum class Side { Left, Right };

enum class MpsOrder {
  F2SpreadsF1,   // F2 is a mean-preserving spread of F1
  F1SpreadsF2,   // F1 is a mean-preserving spread of F2
  Equal,
  Incomparable,
};

std::string to_string(MpsOrder o);

/// A distribution on [0,1] represented exactly as point masses plus
/// uniform-density segments. Canonical form keeps atoms sorted, merges
/// touching segments of equal density and drops zero-mass pieces. A segment
/// owns [lo, hi); an atom at a segment endpoint stays a separate piece.
class PiecewiseDistribution {
 public:
  struct Atom {
    double loc;
    double mass;
  };
  struct Segment {
    double lo;
    double hi;
    double mass;  // uniform density mass/(hi-lo)
    double density() const { return mass / (hi - lo); }
  };

  PiecewiseDistribution() = default;
  PiecewiseDistribution(std::vector<Atom> atoms, std::vector<Segment> segments);

  static PiecewiseDistribution point_mass(double loc);
  static PiecewiseDistribution uniform(double lo, double hi);
  /// Two atoms at {0, 1} with the given mean.
  static PiecewiseDistribution bernoulli(double mean);
  /// Arbitrary atom/segment mixture; masses are normalized checks, not scaled.
  static PiecewiseDistribution make(std::vector<Atom> atoms,
                                    std::vector<Segment> segments);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double total_mass() const;
  double mean() const;

  /// H(w) for Side::Right (right-continuous CDF), H(w-) for Side::Left.
  /// Arguments outside [0,1] are allowed and clamp naturally (0 below, 1 above).
  double cdf(double w, Side side = Side::Right) const;

  /// Mass of the atom exactly at loc (0 if none).
  double atom_mass_at(double loc, double tol = 1e-12) const;

  /// Integrated CDF  I(x) = \int_0^x H(t) dt, exact on pieces.
  double integrated_cdf(double x) const;

  /// \int_a^b H(t) dt, exact.
  double cdf_integral(double a, double b) const;

  /// Locations where the CDF changes slope or jumps (atoms, segment ends).
  std::vector<double> breakpoints() const;

  /// Snaps x to the nearest breakpoint within tol (shifted-argument CDF
  /// evaluations can land one ulp off an atom).
  double snap_to_breakpoint(double x, double tol = 1e-12) const;

  /// Inverse-CDF sample from u in [0,1).
  double sample(double u) const;

  PiecewiseDistribution canonical() const;
  bool is_valid(double tol = 1e-12) const;
  /// Throws if total mass differs from 1, pieces overlap, or leave [0,1].
  void validate(double tol = 1e-12) const;

  std::string to_json() const;
  static PiecewiseDistribution from_json(const std::string& text);

 private:
  std::vector<Atom> atoms_;
  std::vector<Segment> segments_;
};

/// Mean-preserving-spread comparison via the integrated CDFs
/// (F1 spreads F2 iff \int_0^x F2 <= \int_0^x F1 for all x, equality at 1).
/// Throws MeanMismatch if the means differ by more than 1e-9.
MpsOrder mps_compare(const PiecewiseDistribution& f1,
                     const PiecewiseDistribution& f2);

}  // namespace rsell

#include "rsell/concavify.hpp"

#include <algorithm>
#include <cmath>

#include "rsell/errors.hpp"

namespace rsell {

namespace {
constexpr double kContactTol = 1e-10;
}

std::size_t PiecewiseScalarFunction::piece_index(double t) const {
  // Largest k with x_[k] <= t, clamped to a valid piece.
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin() - 1);
  if (k >= slope_.size()) k = slope_.size() - 1;
  return k;
}

double PiecewiseScalarFunction::eval(double t) const {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (std::abs(t - x_[k]) <= 1e-13) return value_[k];
  }
  const std::size_t k = piece_index(t);
  return slope_[k] * t + intercept_[k];
}

double PiecewiseScalarFunction::left_limit(std::size_t k) const {
  if (k == 0) return value_[0];
  return slope_[k - 1] * x_[k] + intercept_[k - 1];
}

double PiecewiseScalarFunction::right_limit(std::size_t k) const {
  if (k + 1 == x_.size()) return value_[k];
  return slope_[k] * x_[k] + intercept_[k];
}

double PiecewiseScalarFunction::usc_value(std::size_t k) const {
  return std::max({value_[k], left_limit(k), right_limit(k)});
}

double PiecewiseScalarFunction::usc_eval(double t) const {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (std::abs(t - x_[k]) <= 1e-13) return usc_value(k);
  }
  return eval(t);
}

double PiecewiseScalarFunction::integrate_against(
    const PiecewiseDistribution& f) const {
  double acc = 0.0;
  for (const auto& a : f.atoms()) acc += a.mass * eval(a.loc);
  for (const auto& s : f.segments()) {
    const double d = s.mass / (s.hi - s.lo);
    // Split [s.lo, s.hi] at our breakpoints; each sub-interval is affine.
    double prev = s.lo;
    for (double bx : x_) {
      if (bx <= s.lo || bx >= s.hi) continue;
      const std::size_t k = piece_index(0.5 * (prev + bx));
      const double mid = 0.5 * (prev + bx);
      acc += d * (slope_[k] * mid + intercept_[k]) * (bx - prev);
      prev = bx;
    }
    const double mid = 0.5 * (prev + s.hi);
    const std::size_t k = piece_index(mid);
    acc += d * (slope_[k] * mid + intercept_[k]) * (s.hi - prev);
  }
  return acc;
}

PiecewiseScalarFunction PiecewiseScalarFunction::affine(double lo, double hi,
                                                        double a, double b) {
  return raw({lo, hi}, {a * lo + b, a * hi + b}, {a}, {b});
}

PiecewiseScalarFunction PiecewiseScalarFunction::interpolate(
    std::vector<double> xs, std::vector<double> ys) {
  std::vector<double> slopes(xs.size() - 1), intercepts(xs.size() - 1);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double dx = xs[k + 1] - xs[k];
    slopes[k] = dx > 0 ? (ys[k + 1] - ys[k]) / dx : 0.0;
    intercepts[k] = ys[k] - slopes[k] * xs[k];
  }
  return raw(std::move(xs), std::move(ys), std::move(slopes), std::move(intercepts));
}

PiecewiseScalarFunction PiecewiseScalarFunction::raw(
    std::vector<double> xs, std::vector<double> values,
    std::vector<double> slopes, std::vector<double> intercepts) {
  PiecewiseScalarFunction f;
  if (xs.size() < 2 || values.size() != xs.size() ||
      slopes.size() + 1 != xs.size() || intercepts.size() != slopes.size()) {
    throw Error("PiecewiseScalarFunction: inconsistent piece data");
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (!(xs[k] < xs[k + 1])) {
      throw Error("PiecewiseScalarFunction: breakpoints not increasing");
    }
  }
  f.x_ = std::move(xs);
  f.value_ = std::move(values);
  f.slope_ = std::move(slopes);
  f.intercept_ = std::move(intercepts);
  return f;
}

PiecewiseScalarFunction upper_concave_envelope(const PiecewiseScalarFunction& f) {
  // Upper hull (monotone chain) of the usc-closed vertex set. Exact for
  // piecewise-linear f: interior affine pieces lie below the chords of their
  // endpoint vertices.
  const auto& xs = f.breakpoints();
  std::vector<double> hx, hy;
  auto cross_keeps = [&](double x0, double y0, double x1, double y1, double x2,
                         double y2) {
    // Keep (x1,y1) iff it lies strictly above the chord (x0,y0)-(x2,y2).
    return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) < 0.0;
  };
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    const double y = f.usc_value(k);
    while (hx.size() >= 2 &&
           !cross_keeps(hx[hx.size() - 2], hy[hy.size() - 2], hx.back(),
                        hy.back(), x, y)) {
      hx.pop_back();
      hy.pop_back();
    }
    hx.push_back(x);
    hy.push_back(y);
  }
  return PiecewiseScalarFunction::interpolate(std::move(hx), std::move(hy));
}

MomentOptimum moment_optimum(const PiecewiseScalarFunction& f, double m) {
  if (m < f.lo() - 1e-12 || m > f.hi() + 1e-12) {
    throw Error("moment_optimum: mean outside the domain");
  }
  m = std::clamp(m, f.lo(), f.hi());
  const PiecewiseScalarFunction env = upper_concave_envelope(f);
  MomentOptimum out;
  out.value = env.eval(m);

  const double fm = f.usc_eval(m);
  if (std::abs(out.value - fm) <= kContactTol) {
    out.witness = PiecewiseDistribution::point_mass(m);
    out.contacts = {m};
    out.open_contact = fm > f.eval(m) + 1e-12;
    return out;
  }
  // m sits inside a hull edge; its endpoints are contact vertices.
  const auto& hx = env.breakpoints();
  for (std::size_t k = 0; k + 1 < hx.size(); ++k) {
    if (m >= hx[k] && m <= hx[k + 1]) {
      const double xl = hx[k], xr = hx[k + 1];
      if (std::abs(env.value_at(k) - f.usc_eval(xl)) > kContactTol ||
          std::abs(env.value_at(k + 1) - f.usc_eval(xr)) > kContactTol) {
        throw NoContact("moment_optimum: hull vertex does not touch f");
      }
      const double wl = (xr - m) / (xr - xl);
      out.witness = PiecewiseDistribution({{xl, wl}, {xr, 1.0 - wl}}, {});
      out.contacts = {xl, xr};
      out.open_contact = (f.usc_eval(xl) > f.eval(xl) + 1e-12) ||
                         (f.usc_eval(xr) > f.eval(xr) + 1e-12);
      return out;
    }
  }
  throw NoContact("moment_optimum: no hull edge brackets the mean");
}

}  // namespace rsell

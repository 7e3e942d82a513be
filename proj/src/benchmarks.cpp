#include "rsell/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "rsell/errors.hpp"

namespace rsell {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

SmoothDistribution make_smooth_family(const std::string& name, double param1,
                                      double param2) {
  SmoothDistribution g;
  g.name = name;
  if (name == "uniform") {
    g.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    g.pdf = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
    g.mean = 0.5;
    return g;
  }
  if (name == "texp") {
    const double lam = param1 > 0.0 ? param1 : 1.0;
    const double z = 1.0 - std::exp(-lam);
    g.cdf = [lam, z](double x) {
      x = std::clamp(x, 0.0, 1.0);
      return (1.0 - std::exp(-lam * x)) / z;
    };
    g.pdf = [lam, z](double x) {
      return (x >= 0.0 && x <= 1.0) ? lam * std::exp(-lam * x) / z : 0.0;
    };
    g.mean = 1.0 / lam - std::exp(-lam) / z;
    return g;
  }
  if (name == "triangular") {
    const double m = std::clamp(param1 > 0.0 ? param1 : 0.5, 1e-6, 1.0 - 1e-6);
    g.pdf = [m](double x) {
      if (x < 0.0 || x > 1.0) return 0.0;
      return x <= m ? 2.0 * x / m : 2.0 * (1.0 - x) / (1.0 - m);
    };
    g.cdf = [m](double x) {
      x = std::clamp(x, 0.0, 1.0);
      if (x <= m) return x * x / m;
      return 1.0 - (1.0 - x) * (1.0 - x) / (1.0 - m);
    };
    g.mean = (1.0 + m) / 3.0;
    return g;
  }
  if (name == "beta") {
    const double al = param1 >= 1.0 ? param1 : 2.0;
    const double be = param2 >= 1.0 ? param2 : 2.0;
    const double logc = std::lgamma(al + be) - std::lgamma(al) - std::lgamma(be);
    auto pdf = [al, be, logc](double x) {
      if (x <= 0.0 || x >= 1.0) {
        // Continuity at the ends for al or be equal to 1.
        if (x == 0.0 && al == 1.0) return be;
        if (x == 1.0 && be == 1.0) return al;
        return 0.0;
      }
      return std::exp(logc + (al - 1.0) * std::log(x) +
                      (be - 1.0) * std::log1p(-x));
    };
    g.pdf = pdf;
    // Cumulative Simpson table; avoids nested adaptive quadrature when the
    // cdf itself sits under an integral.
    const std::size_t n = 8192;
    auto table = std::make_shared<std::vector<double>>(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = static_cast<double>(i) / n;
      const double x1 = static_cast<double>(i + 1) / n;
      (*table)[i + 1] = (*table)[i] + (x1 - x0) / 6.0 *
                            (pdf(x0) + 4.0 * pdf(0.5 * (x0 + x1)) + pdf(x1));
    }
    const double norm = (*table)[n];
    g.cdf = [table, n, norm](double x) {
      x = std::clamp(x, 0.0, 1.0);
      const double pos = x * static_cast<double>(n);
      const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
      const double frac = pos - static_cast<double>(i);
      return ((*table)[i] * (1.0 - frac) + (*table)[i + 1] * frac) / norm;
    };
    g.mean = al / (al + be);
    return g;
  }
  throw Error("make_smooth_family: unknown family " + name);
}

void check_log_concave(const SmoothDistribution& g, std::size_t grid) {
  std::vector<double> logs(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const double d = g.pdf(x);
    if (!(d > 0.0)) {
      throw NotLogConcave(g.name + ": density not positive at " +
                          std::to_string(x));
    }
    logs[i] = std::log(d);
  }
  for (std::size_t i = 0; i + 2 < grid; ++i) {
    if (logs[i] - 2.0 * logs[i + 1] + logs[i + 2] > 1e-7) {
      throw NotLogConcave(g.name + ": log-density fails the midpoint test");
    }
  }
}

double smooth_search_benefit(const SmoothDistribution& g, double t) {
  if (t >= 1.0) return 0.0;
  if (t <= 0.0) return g.mean - t;
  // \int_t^1 (v-t) g(v) dv = \int_t^1 (1-G(v)) dv on [0,1].
  return integrate([&](double v) { return 1.0 - g.cdf(v); }, t, 1.0);
}

double smooth_reservation_value(const SmoothDistribution& g, double s) {
  double lo = 0.0, hi = 1.0;
  if (smooth_search_benefit(g, 0.0) < s) {
    throw NoRoot("smooth_reservation_value: S_G(0) < s");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (smooth_search_benefit(g, mid) >= s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RobustSolution zero_search_strategy(double mu, double xi) {
  return robust_strategy(validate_params(mu, xi, 0.0));
}

KnownDistPrice known_dist_price(const SmoothDistribution& g, double s) {
  check_log_concave(g);
  if (!(s < g.mean)) throw NoRoot("known_dist_price: requires s < mean");
  KnownDistPrice out;
  out.a = smooth_reservation_value(g, s);
  // p g(1-p) - G(1-p) is negative at 0 and positive at 1 (log-concavity
  // makes the crossing unique).
  auto froot = [&](double p) { return p * g.pdf(1.0 - p) - g.cdf(1.0 - p); };
  double lo = 0.0, hi = 1.0;
  if (froot(lo) > 0.0 || froot(hi) < 0.0) {
    throw NoRoot("known_dist_price: p g(1-p) = G(1-p) has no bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (froot(mid) <= 0.0 ? lo : hi) = mid;
  }
  out.p_h = 0.5 * (lo + hi);
  const double search_profit = out.p_h * g.cdf(1.0 - out.p_h);
  out.deterrence = (1.0 - out.a >= search_profit);
  out.p_o = out.deterrence ? 1.0 - out.a : out.p_h;
  out.profit_factor = std::max(1.0 - out.a, search_profit);
  return out;
}

double known_dist_threshold(const SmoothDistribution& g) {
  check_log_concave(g);
  const double level = [&] {
    const KnownDistPrice k = known_dist_price(g, 1e-9);
    return k.p_h * g.cdf(1.0 - k.p_h);
  }();
  // 1 - a(s) is strictly increasing in s while the search profit is constant,
  // so the branch switch is a single root.
  auto diff = [&](double s) {
    return (1.0 - smooth_reservation_value(g, s)) - level;
  };
  double lo = 1e-12, hi = g.mean * (1.0 - 1e-9);
  if (diff(lo) >= 0.0) return lo;
  if (diff(hi) < 0.0) {
    throw NoRoot("known_dist_threshold: deterrence never overtakes");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (diff(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rsell

#include <doctest.h>

#include <cmath>
#include <random>

#include "rsell/errors.hpp"
#include "rsell/search.hpp"
#include "test_util.hpp"

using namespace rsell;

TEST_CASE("search_benefit closed forms") {
  const auto u01 = PiecewiseDistribution::uniform(0.0, 1.0);
  // (1-t)^2/2 for the standard uniform.
  for (double t : {0.0, 0.25, 0.3675, 0.9}) {
    CHECK(search_benefit(u01, t) ==
          doctest::Approx((1.0 - t) * (1.0 - t) / 2.0).epsilon(1e-13));
  }
  CHECK(search_benefit(u01, 0.3675) == doctest::Approx(0.2000).epsilon(2e-4));

  const auto dxi = PiecewiseDistribution::point_mass(0.5);
  CHECK(search_benefit(dxi, 0.2) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(search_benefit(dxi, 0.7) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(search_benefit(u01, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("search_benefit is convex and nonincreasing") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 30; ++it) {
    const auto g = testutil::random_dist(rng);
    double prev = search_benefit(g, -1.0);
    double prev_slope = -2.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = -1.0 + 2.0 * i / 100.0;
      const double v = search_benefit(g, t);
      CHECK(v <= prev + 1e-12);
      CHECK(v >= -1e-12);
      const double slope = (v - prev) / 0.02;
      CHECK(slope >= prev_slope - 1e-9);  // increasing slopes = convex
      prev = v;
      prev_slope = slope;
    }
  }
}

TEST_CASE("reservation_value matches the footnote cases") {
  const double s = 0.2;
  CHECK(reservation_value(PiecewiseDistribution::point_mass(0.5), s).a ==
        doctest::Approx(0.3).epsilon(1e-10));
  CHECK(reservation_value(PiecewiseDistribution::bernoulli(0.5), s).a ==
        doctest::Approx(0.6).epsilon(1e-10));
  CHECK(reservation_value(PiecewiseDistribution::uniform(0.0, 1.0), s).a ==
        doctest::Approx(1.0 - std::sqrt(0.4)).epsilon(1e-10));
}

TEST_CASE("reservation_value stays in the theoretical bracket") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 100; ++it) {
    const double xi = 0.2 + 0.6 * (it % 10) / 10.0;
    const auto g = testutil::random_dist_with_mean(rng, xi);
    const double s = xi * (0.05 + 0.9 * (it % 7) / 7.0);
    const double a = reservation_value(g, s).a;
    CHECK(a >= xi - s - 1e-9);
    CHECK(a <= 1.0 - s / xi + 1e-9);
    CHECK(std::abs(search_benefit(g, a) - s) < 1e-10);
  }
}

TEST_CASE("reservation_value detects a bad mean") {
  // G with mean 0.3 cannot deliver benefit 0.25 at t = mean(G) - s when the
  // caller believes the mean is higher.
  const auto g = PiecewiseDistribution::point_mass(0.3);
  CHECK_THROWS_AS(reservation_value(g, 0.35), NoRoot);
}

TEST_CASE("effective_distribution pushes G through min{v,a}") {
  const double s = 0.2;
  const auto e1 =
      effective_distribution(PiecewiseDistribution::point_mass(0.5), s);
  CHECK(e1.a == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(e1.dist.atom_mass_at(0.3, 1e-9) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e1.dist.mean() == doctest::Approx(0.3).epsilon(1e-10));

  const auto e2 =
      effective_distribution(PiecewiseDistribution::bernoulli(0.5), s);
  CHECK(e2.dist.atom_mass_at(0.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(e2.dist.atom_mass_at(0.6, 1e-9) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(e2.dist.mean() == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("effective distribution has mean xi - s") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 100; ++it) {
    const double xi = 0.25 + 0.5 * (it % 9) / 9.0;
    const double s = xi * (0.1 + 0.8 * (it % 5) / 5.0);
    const auto g = testutil::random_dist_with_mean(rng, xi);
    const auto e = effective_distribution(g, s);
    CHECK(e.dist.mean() == doctest::Approx(xi - s).epsilon(1e-10));
    CHECK(e.dist.breakpoints().back() <= 1.0 - s / xi + 1e-9);
  }
}

TEST_CASE("demand under full information at the deterrence price is mu") {
  const double mu = 0.6, xi = 0.5, s = 0.2, p = s / xi * 0.5 + 0.2;  // 0.4
  const auto full = PiecewiseDistribution::make({{0.0, 1.0 - mu}, {1.0, mu}}, {});
  for (const auto& g :
       {PiecewiseDistribution::point_mass(xi), PiecewiseDistribution::bernoulli(xi),
        PiecewiseDistribution::uniform(0.0, 1.0)}) {
    const auto dr = demand_and_revenue(p, full, g, s);
    CHECK(dr.demand == doctest::Approx(mu).epsilon(1e-12));
    CHECK(dr.revenue == doctest::Approx(p * mu).epsilon(1e-12));
  }
}

TEST_CASE("affine posterior distributions hedge against any adversary") {
  // H affine on (p,1]: demand = 1 - H(p + xi - s) for every mean-xi G.
  const double xi = 0.5, s = 0.2, p = 0.3;
  const auto h = PiecewiseDistribution::uniform(p, 1.0);
  const double expect = 1.0 - h.cdf(p + xi - s, Side::Right);
  std::mt19937_64 rng(53);
  for (int it = 0; it < 50; ++it) {
    const auto g = testutil::random_dist_with_mean(rng, xi);
    const auto dr = demand_and_revenue(p, h, g, s);
    CHECK(dr.demand == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("demand example with a point-mass adversary") {
  // H = U[0.3,1], p=0.3, G=delta_0.5, s=0.2: a=0.3, all v above a, so the
  // buy-now branch alone: demand = 1 - U(0.6) = 4/7.
  const auto h = PiecewiseDistribution::uniform(0.3, 1.0);
  const auto g = PiecewiseDistribution::point_mass(0.5);
  const auto dr = demand_and_revenue(0.3, h, g, 0.2);
  CHECK(dr.demand == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(dr.revenue == doctest::Approx(0.3 * 4.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("deterred atom always buys, for every adversary") {
  const double mu = 0.55, xi = 0.5, s = 0.15;
  const double p = 0.25;  // below s/xi = 0.3
  const double top = p + 1.0 - s / xi;
  const double atom_mass = mu / top;
  const auto h = PiecewiseDistribution::make(
      {{0.0, 1.0 - atom_mass}, {top, atom_mass}}, {});
  std::mt19937_64 rng(59);
  for (int it = 0; it < 50; ++it) {
    const auto g = testutil::random_dist_with_mean(rng, xi);
    const auto dr = demand_and_revenue(p, h, g, s);
    CHECK(dr.demand >= atom_mass - 1e-12);
  }
}

TEST_CASE("simulate_market is deterministic and matches closed forms") {
  const auto h = PiecewiseDistribution::point_mass(1.0);
  const auto g = PiecewiseDistribution::uniform(0.0, 1.0);
  const auto always = simulate_market(0.0, h, g, 0.2, 20000, 99);
  CHECK(always.demand_estimate == doctest::Approx(1.0).epsilon(1e-14));

  const auto again = simulate_market(0.0, h, g, 0.2, 20000, 99);
  CHECK(always.demand_estimate == again.demand_estimate);
  CHECK(always.mean_match_value == again.mean_match_value);
}

TEST_CASE("simulation agrees with the demand formula within 4 sigma") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 12; ++it) {
    const double xi = 0.3 + 0.4 * u(rng);
    const double s = xi * (0.1 + 0.7 * u(rng));
    const double mu = 0.2 + 0.6 * u(rng);
    const double p = 0.8 * u(rng);
    const auto h = testutil::random_dist_with_mean(rng, mu);
    const auto g = testutil::random_dist_with_mean(rng, xi);
    const auto dr = demand_and_revenue(p, h, g, s);
    const auto sim = simulate_market(p, h, g, s, 200000, 1000 + it);
    CHECK(std::abs(sim.demand_estimate - dr.demand) <=
          4.0 * std::max(sim.stderr_estimate, 1e-6));
  }
}

TEST_CASE("simulation honors the weak buy-now tie-break at w = p + a") {
  // Dyadic parameters make p + a exactly representable: G Bernoulli(0.5),
  // s = 0.125 gives a = 0.75; with p = 0.125 the posterior atom at 0.875
  // ties exactly and must buy now.
  const double s = 0.125, p = 0.125;
  const auto g = PiecewiseDistribution::bernoulli(0.5);
  const double a = reservation_value(g, s).a;
  CHECK(a == doctest::Approx(0.75).epsilon(1e-12));
  const auto h = PiecewiseDistribution::make({{0.0, 0.25}, {0.875, 0.75}}, {});
  const auto dr = demand_and_revenue(p, h, g, s);
  CHECK(dr.demand == doctest::Approx(0.75).epsilon(1e-12));
  const auto sim = simulate_market(p, h, g, s, 400000, 4242);
  CHECK(std::abs(sim.demand_estimate - 0.75) <= 4.0 * sim.stderr_estimate);
  // With the atom a hair below the tie it must search instead and the binary
  // adversary keeps it from returning with probability 1/2.
  const auto h2 =
      PiecewiseDistribution::make({{0.0, 0.25}, {0.875 - 1e-9, 0.75}}, {});
  const auto dr2 = demand_and_revenue(p, h2, g, s);
  CHECK(dr2.demand == doctest::Approx(0.375).epsilon(1e-6));
}

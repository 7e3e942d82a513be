#include <doctest.h>

#include <random>

#include "rsell/closed_form.hpp"
#include "rsell/distribution.hpp"
#include "rsell/errors.hpp"
#include "rsell/model.hpp"
#include "test_util.hpp"

using namespace rsell;

TEST_CASE("validate_params enforces the admissible box") {
  CHECK_NOTHROW(validate_params(0.6, 0.5, 0.2));
  CHECK_THROWS_AS(validate_params(0.6, 0.5, 0.5), OutOfRange);
  CHECK_THROWS_AS(validate_params(0.0, 0.5, 0.1), OutOfRange);
  CHECK_THROWS_AS(validate_params(1.0, 0.5, 0.1), OutOfRange);
  CHECK_THROWS_AS(validate_params(0.5, 0.5, -0.1), OutOfRange);
  try {
    validate_params(0.6, 0.5, 0.5);
  } catch (const OutOfRange& e) {
    CHECK(e.field() == "s");
  }
  try {
    validate_params(0.0, 0.5, 0.1);
  } catch (const OutOfRange& e) {
    CHECK(e.field() == "mu");
  }
  // s = 0 is admissible (zero search cost benchmark).
  CHECK_NOTHROW(validate_params(0.6, 0.5, 0.0));
}

TEST_CASE("cdf evaluation with one-sided limits") {
  const auto full = PiecewiseDistribution::make({{0.0, 0.4}, {1.0, 0.6}}, {});
  CHECK(full.cdf(0.5, Side::Right) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(full.cdf(1.0, Side::Left) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(full.cdf(1.0, Side::Right) == doctest::Approx(1.0).epsilon(1e-14));

  const auto u = PiecewiseDistribution::uniform(0.2, 1.0);
  CHECK(u.cdf(0.6, Side::Right) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dist_mean is exact on pieces") {
  CHECK(PiecewiseDistribution::uniform(0.5, 1.0).mean() ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK(PiecewiseDistribution::point_mass(0.6).mean() ==
        doctest::Approx(0.6).epsilon(1e-14));

  // Mixture policy at (mu=0.95, xi=0.3, s=0.1): density 0.225 on [1/3,1),
  // atom 0.85 at 1. Hand integration gives 0.15*(2/3) + 0.85 = 0.95; a
  // Riemann oracle over the CDF cross-checks the piecewise mean.
  const auto p = validate_params(0.95, 0.3, 0.1);
  const auto hu = make_policy(PolicyKind::Mixture, p, p.deterrence_price());
  REQUIRE(hu.segments().size() == 1);
  CHECK(hu.segments()[0].density() == doctest::Approx(0.225).epsilon(1e-12));
  CHECK(hu.atom_mass_at(1.0) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(hu.mean() == doctest::Approx(0.95).epsilon(1e-13));
  double acc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) acc += hu.cdf((i + 0.5) / n, Side::Right) / n;
  CHECK(hu.mean() == doctest::Approx(1.0 - acc).epsilon(1e-7));
}

TEST_CASE("canonicalization is idempotent and validates") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    const auto d = testutil::random_dist(rng);
    const auto c1 = d.canonical();
    const auto c2 = c1.canonical();
    REQUIRE(c1.atoms().size() == c2.atoms().size());
    REQUIRE(c1.segments().size() == c2.segments().size());
    for (std::size_t i = 0; i < c1.atoms().size(); ++i) {
      CHECK(c1.atoms()[i].loc == c2.atoms()[i].loc);
      CHECK(c1.atoms()[i].mass == c2.atoms()[i].mass);
    }
    for (std::size_t i = 0; i < c1.segments().size(); ++i) {
      CHECK(c1.segments()[i].lo == c2.segments()[i].lo);
      CHECK(c1.segments()[i].hi == c2.segments()[i].hi);
      CHECK(c1.segments()[i].mass == c2.segments()[i].mass);
    }
    CHECK(d.is_valid(1e-9));
  }
}

TEST_CASE("cdf is nondecreasing, right-continuous, reaches one") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    const auto d = testutil::random_dist(rng);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double w = i / 200.0;
      const double v = d.cdf(w, Side::Right);
      CHECK(v >= prev - 1e-12);
      CHECK(v >= d.cdf(w, Side::Left) - 1e-12);
      CHECK(d.cdf(w + 1e-12, Side::Right) == doctest::Approx(v).epsilon(1e-8));
      prev = v;
    }
    CHECK(d.cdf(1.0, Side::Right) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mps_compare on the extreme-spread pair") {
  // Full information is the maximal mean-preserving spread in M(mu).
  const auto full = PiecewiseDistribution::make({{0.0, 0.25}, {1.0, 0.75}}, {});
  const auto unif = PiecewiseDistribution::uniform(0.5, 1.0);  // mean 0.75
  CHECK(mps_compare(full, unif) == MpsOrder::F1SpreadsF2);
  CHECK(mps_compare(unif, full) == MpsOrder::F2SpreadsF1);
  CHECK(mps_compare(unif, unif) == MpsOrder::Equal);
}

TEST_CASE("mps_compare rejects mean mismatches") {
  const auto a = PiecewiseDistribution::point_mass(0.4);
  const auto b = PiecewiseDistribution::point_mass(0.6);
  CHECK_THROWS_AS(mps_compare(a, b), MeanMismatch);
}

TEST_CASE("optimal policies for increasing prices are MPS-ordered") {
  // For s/xi < p1 < p2 the optimal posterior distribution for p2 spreads the
  // one for p1.
  const auto p = validate_params(0.6, 0.5, 0.2);
  const auto d1 = optimal_info_for_price(0.45, p).dist;
  const auto d2 = optimal_info_for_price(0.55, p).dist;
  const auto d3 = optimal_info_for_price(0.65, p).dist;
  CHECK(mps_compare(d2, d1) == MpsOrder::F1SpreadsF2);
  CHECK(mps_compare(d3, d2) == MpsOrder::F1SpreadsF2);
  CHECK(mps_compare(d3, d1) == MpsOrder::F1SpreadsF2);
}

TEST_CASE("mps is a partial order on spread chains") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const double m = 0.2 + 0.6 * u(rng);
    const auto d0 = PiecewiseDistribution::point_mass(m);
    const double h1 = std::min(m, 1.0 - m) * (0.2 + 0.8 * u(rng));
    const auto d1 =
        PiecewiseDistribution::make({{m - h1, 0.5}, {m + h1, 0.5}}, {});
    const double h2 = std::min(m - h1, 1.0 - m - h1) * (0.2 + 0.8 * u(rng));
    const auto d2 = PiecewiseDistribution::make(
        {{m - h1 - h2, 0.25}, {m - h1 + h2, 0.25}, {m + h1 - h2, 0.25},
         {m + h1 + h2, 0.25}},
        {});
    CHECK(mps_compare(d1, d0) == MpsOrder::F1SpreadsF2);
    CHECK(mps_compare(d2, d1) == MpsOrder::F1SpreadsF2);
    // Transitivity and antisymmetry of the order.
    CHECK(mps_compare(d2, d0) == MpsOrder::F1SpreadsF2);
    CHECK(mps_compare(d0, d2) == MpsOrder::F2SpreadsF1);
  }
}

TEST_CASE("json round trip is bit-exact for canonical forms") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    const auto d = testutil::random_dist(rng);
    const auto back = PiecewiseDistribution::from_json(d.to_json());
    REQUIRE(back.atoms().size() == d.atoms().size());
    REQUIRE(back.segments().size() == d.segments().size());
    for (std::size_t i = 0; i < d.atoms().size(); ++i) {
      CHECK(back.atoms()[i].loc == d.atoms()[i].loc);
      CHECK(back.atoms()[i].mass == d.atoms()[i].mass);
    }
    for (std::size_t i = 0; i < d.segments().size(); ++i) {
      CHECK(back.segments()[i].lo == d.segments()[i].lo);
      CHECK(back.segments()[i].hi == d.segments()[i].hi);
      CHECK(back.segments()[i].mass == d.segments()[i].mass);
    }
  }
}

TEST_CASE("policy constructors return mean-mu distributions") {
  const auto p = validate_params(0.95, 0.3, 0.1);
  CHECK(make_policy(PolicyKind::Full, p).mean() ==
        doctest::Approx(0.95).epsilon(1e-13));
  CHECK(make_policy(PolicyKind::Mixture, p, p.deterrence_price()).mean() ==
        doctest::Approx(0.95).epsilon(1e-13));
  const auto q = validate_params(0.6, 0.5, 0.2);
  CHECK(make_policy(PolicyKind::Binary, q, 0.3).mean() ==
        doctest::Approx(0.6).epsilon(1e-13));
  CHECK(make_policy(PolicyKind::WBarFamily, q, 0.45, 0.8).mean() ==
        doctest::Approx(0.6).epsilon(1e-13));
}

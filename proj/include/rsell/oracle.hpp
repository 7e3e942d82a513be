#pragma once

#include <cstddef>
#include <vector>

#include "rsell/distribution.hpp"
#include "rsell/model.hpp"

namespace rsell {

/// Uniform grid on an interval plus mandatory insertions.
struct GridSpec {
  std::size_t n_points = 400;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> includes;

  std::vector<double> build() const;
};

struct OracleWitness {
  double a = 0.0;                  // reservation value of the minimizing block
  std::vector<double> locations;   // support points (last one is a)
  std::vector<double> masses;
  double atom_mass = 0.0;          // mass at a; satisfies atom*(1-a) >= s
};

struct OracleResult {
  double demand = 0.0;
  OracleWitness witness;
};

/// Brute-force certification of the worst case: minimize demand over the
/// grid-restricted adversaries, for each reservation value a solving the LP
/// over masses below a plus the atom at a, subject to total mass one, mean
/// xi - s, and the inducibility constraint q_a (1-a) >= s.
OracleResult nature_worst_case_oracle(double price,
                                      const PiecewiseDistribution& h,
                                      const ModelParams& params,
                                      std::size_t n_points = 400);

/// Value of the finite zero-sum game (Seller mixes over a posterior grid,
/// Nature over the grid-restricted feasible set); approximates Phi(p)/p.
/// Solved by a cutting-plane loop whose master and slave steps are LPs.
double minimax_oracle(double price, const ModelParams& params,
                      std::size_t posterior_points = 300,
                      std::size_t adversary_points = 300);

}  // namespace rsell

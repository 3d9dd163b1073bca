#pragma once

#include <functional>
#include <random>
#include <vector>

#include "curvelab/birth_death_chain.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

WeightedGraph make_path(int n);
WeightedGraph make_cycle(int n);
WeightedGraph make_complete(int n);
WeightedGraph make_star(int leaves);  // vertex 0 is the center
WeightedGraph make_hypercube(int dim);

struct RandomGraphOptions {
  int n = 20;
  double edge_prob = 0.15;
  int max_degree = 0;           // 0 = unbounded (combinatorial degree)
  bool random_weights = false;  // uniform in [0.5, 2]
  bool random_measures = false; // uniform in [0.5, 2]
};

/// Erdos-Renyi skeleton forced connected via a random spanning tree;
/// degree cap applies to the combinatorial degree.
WeightedGraph make_random(const RandomGraphOptions& opt, std::mt19937_64& rng);

BirthDeathChain bdc_from_rates(std::vector<double> w_up, std::vector<double> m,
                               bool exact_end = false);

/// The Z-chain w(z, z+1) = m(z) = 2^z on [-N, N]; vertex index z + N,
/// labels carry the signed coordinate.
WeightedGraph make_two_sided_geometric(int N);

/// Chain with m == 1 and w(R, R+1) = 1 + sum_{r<=R} sum_{k<=r} (log k)^{1+eps};
/// sphere curvatures are -(log r)^{1+eps} for r >= 2.
BirthDeathChain make_g_epsilon(double eps, int N);

/// Chain built from a summable positive sequence k_r (r >= 1):
/// m(0) = 1, w(0,1) = 2 sum_{i>0} k_i, m(r) = w(r,r-1)/k_{r+1},
/// w(r,r+1) = 2 m(r) sum_{i>r} k_i. Tail sums are accumulated numerically.
BirthDeathChain make_finite_optimal(const std::function<double(int)>& k, int N);

/// Uniformly positive curvature K from a strictly decreasing rate sequence
/// w_up[r] = w(r, r+1), r = 0..N: m(r) = (w(r,r-1) - w(r,r+1)) / (K r - Deg(0)),
/// requires m0 > w(0,1)/K. Produces the truncation to radius N = w_up.size()-1
/// (the last rate enters only through m(N)).
BirthDeathChain make_positive_curv_infinite(double K,
                                            const std::vector<double>& w_up,
                                            double m0);

/// m(r) = 2^r, w(r-1,r) = (log r)^{1+eps} * r * 2^r; the r = 1 rate
/// degenerates to 0 in this formula, so it is replaced by 2 (the same
/// expression with the vanishing log factor set to 1).
BirthDeathChain make_intrinsic_example(double eps, int N);

}  // namespace curvelab

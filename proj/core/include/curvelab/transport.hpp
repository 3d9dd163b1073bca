#pragma once

#include <vector>

#include "curvelab/finite_measure.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

struct TransportPlan {
  double value = 0.0;
  Coupling coupling;
  int iterations = 0;
};

/// Wasserstein-1 distance between probability measures over the hop metric,
/// solved as a transportation problem by successive shortest augmenting
/// paths with potentials on the bipartite support graph. Throws
/// NotProbability when a total deviates from 1 by more than 1e-9.
TransportPlan wasserstein(const WeightedGraph& g, const FiniteMeasure& mu,
                          const FiniteMeasure& nu);

struct DualPotential {
  double value = 0.0;
  std::vector<double> potential;  // per-vertex, 1-Lipschitz on all of V
  int pivots = 0;
};

/// Kantorovich dual: max sum f (mu - nu) over 1-Lipschitz f. Potential
/// variables live on support(mu) u support(nu); the returned function is
/// extended to V by f(v) = min_s f(s) + d(s, v).
DualPotential wasserstein_dual(const WeightedGraph& g, const FiniteMeasure& mu,
                               const FiniteMeasure& nu);

double duality_gap(const WeightedGraph& g, const FiniteMeasure& mu,
                   const FiniteMeasure& nu);

}  // namespace curvelab

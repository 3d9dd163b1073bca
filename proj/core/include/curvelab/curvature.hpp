#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "curvelab/birth_death_chain.hpp"
#include "curvelab/finite_measure.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

enum class CurvatureMethod {
  dual_lp,
  transport_lp,
  combinatorial,
  bruteforce,
  bdc_closed_form,
};

const char* method_name(CurvatureMethod m);

struct SolverStats {
  int pivots = 0;
  int iterations = 0;
  long nodes = 0;
};

struct CurvatureReport {
  double kappa = 0.0;
  CurvatureMethod method = CurvatureMethod::dual_lp;
  /// Minimizing 1-Lipschitz f on B_1(x) u B_1(y), normalized f(x) = 0.
  std::optional<std::vector<std::pair<Vertex, double>>> witness_potential;
  /// Maximizing transport function on B_1(x) x B_1(y).
  std::optional<Coupling> witness_coupling;
  SolverStats stats;
};

/// kappa(x,y) as the infimum of grad_xy Delta f over 1-Lipschitz f with
/// grad_yx f = 1; LP over the ball union with global distances. Works for
/// any pair x != y.
CurvatureReport ollivier_dual(const WeightedGraph& g, Vertex x, Vertex y);

/// kappa(x0,y0) as the optimal transport profit with coupling constraints
/// on the unit spheres only. Works for any pair x0 != y0.
CurvatureReport ollivier_transport(const WeightedGraph& g, Vertex x0, Vertex y0);

/// Combinatorial-graph formula: #B_{x0y0} minus the optimal assignment of
/// exclusive neighbors, matched at cost d-1 and left unmatched at cost 1.
/// Requires w in {0,1}, m == 1 and x0 ~ y0.
CurvatureReport ollivier_combinatorial(const WeightedGraph& g, Vertex x0, Vertex y0);

/// Exact minimum over integer 1-Lipschitz functions on the ball union
/// (values in [-D, D], f(x0) = 0); oracle engine for combinatorial graphs.
CurvatureReport ollivier_bruteforce(const WeightedGraph& g, Vertex x0, Vertex y0,
                                    int max_ball = 20);

struct EpsCurvature {
  double eps = 0.0;
  double kappa_eps = 0.0;
  double normalized = 0.0;  // kappa_eps / eps
};

/// kappa_eps(x,y) = 1 - W(m_x^eps, m_y^eps)/d(x,y); requires
/// eps <= 1/max(Deg(x), Deg(y)) so the kernels are probability measures.
EpsCurvature ollivier_eps(const WeightedGraph& g, Vertex x, Vertex y, double eps);

/// Closed form 2w(x,y)(1/m(x) + 1/m(y)) - Deg(x) - Deg(y) for an edge that
/// lies in no 3-, 4- or 5-cycle (checked; ShortCyclePresent otherwise).
double no_cycle_formula(const WeightedGraph& g, Vertex x, Vertex y);

/// Birth-death chain closed form for 0 <= r < R within the truncation.
double bdc_curvature(const BirthDeathChain& chain, int r, int R);

/// (kappa(0,r), mean of the step curvatures); the two agree.
std::pair<double, double> bdc_average_identity(const BirthDeathChain& chain, int r);

/// kappa(r) = min_{y in S_r} max_{x in S_{r-1}, x~y} kappa(x,y), via the dual LP.
double sphere_curvature(const WeightedGraph& g, Vertex x0, int r);
double sphere_curvature(const WeightedGraph& g, const SphereDecomposition& sd, int r);

/// min over adjacent pairs of ollivier_dual; adjacency suffices for Ric(G).
double ric_lower_bound(const WeightedGraph& g, unsigned workers = 1);

struct IntrinsicCurvature {
  double sigma_to_root = 0.0;  // sigma(0, r)
  double kappa_sigma = 0.0;    // kappa_sigma(r, r+1)
  bool intrinsic_ok = true;    // sum_y w(x,y) sigma(x,y)^2 <= 2 m(x) up to r+1
};

/// Intrinsic path metric sigma(r,R) = sum Deg_+(k)^{-1/2} on a birth-death
/// chain and the curvature kappa_sigma(r,r+1) = grad^sigma Delta sigma(0,.).
IntrinsicCurvature intrinsic_curvature_bdc(const BirthDeathChain& chain, int r);

}  // namespace curvelab

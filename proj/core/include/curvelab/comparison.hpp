#pragma once

#include <string>
#include <vector>

#include "curvelab/birth_death_chain.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

struct LaplacianComparisonResult {
  bool holds = true;
  double max_excess = 0.0;  // max over x of Delta d(x0,.)(x) - bound(x)
};

/// Delta d(x0,.) <= Deg(x0) - K d(x0,.) under kappa(x0,.) >= K; the
/// precondition is verified over all y with d(x0,y) <= check_radius
/// (whole graph when negative) and CurvaturePreconditionFailed otherwise.
LaplacianComparisonResult laplacian_comparison(const WeightedGraph& g, Vertex x0,
                                               double K, int check_radius = -1,
                                               double tol = 1e-7);

struct ComparisonProfile {
  Vertex root = 0;
  int r_max = 0;
  std::vector<double> phi;      // Phi(0..r_max), Phi(0) = Deg(x0)
  std::vector<double> kappa_r;  // kappa_r[r] for r = 1..r_max (index 0 unused)
  std::vector<double> lap_values;  // Delta d(x0,.) per vertex
  struct Violation {
    Vertex v;
    double excess;
  };
  std::vector<Violation> violations;  // empty on every graph
};

ComparisonProfile comparison_profile(const WeightedGraph& g, Vertex x0,
                                     int r_max = -1, double tol = 1e-7);

/// Sphere masses and cross-sphere weights relative to a root; the result is
/// an exact finite chain (w(N, N+1) = 0 beyond the last sphere).
BirthDeathChain associated_bdc(const WeightedGraph& g, Vertex x0);

/// Checks that Delta d <= Phi(d) on the graph transfers to the associated
/// chain; returns whether the chain-side inequality holds.
bool bdc_comparison_transfer(const WeightedGraph& g, Vertex x0,
                             const std::vector<double>& phi, double tol = 1e-7);

struct CurvatureComparison {
  double sum_tilde = 0.0;  // sum of associated-chain step curvatures
  double sum_graph = 0.0;  // sum of sphere curvatures
};

CurvatureComparison curvature_comparison(const WeightedGraph& g, Vertex x0, int R);

struct DiameterBound {
  double bound = 0.0;
  bool holds = true;
};

/// d(x,y) <= (Deg(x) + Deg(y)) / kappa(x,y); NonPositiveCurvature if
/// kappa(x,y) <= 0.
DiameterBound simple_diameter_bound(const WeightedGraph& g, Vertex x, Vertex y);

struct RadiusRecord {
  int radius = 0;
  double kappa_sum = 0.0;  // sum_{r<=R} kappa(r)
  double rhs = 0.0;        // Deg(x0) + min_{x in S_R} (Deg_-(x) - Deg_+(x))
  double slack = 0.0;      // rhs - kappa_sum
  bool holds = true;
};

std::vector<RadiusRecord> improved_diameter_check(const WeightedGraph& g, Vertex x0,
                                                  double tol = 1e-9);

struct FiniteMeasureCheck {
  std::vector<double> kappa_partial_sums;  // index R = 1..r_max
  double threshold = 0.0;                  // Deg(x0)
  double m_total = 0.0;
  bool exceeds_threshold = false;          // some partial sum > threshold
};

FiniteMeasureCheck finite_measure_check(const WeightedGraph& g, Vertex x0);

enum class Completeness { complete, incomplete, inconclusive };
enum class CompletenessCriterion { curvature_decay, bdc_sum };
enum class SummandKind { ball_measure, vertex_count };

const char* completeness_name(Completeness c);

struct CompletenessVerdict {
  Completeness status = Completeness::inconclusive;
  CompletenessCriterion criterion = CompletenessCriterion::bdc_sum;
  std::vector<double> summands;      // bdc_sum: s_r; decay: kappa(r)
  std::vector<double> partial_sums;  // bdc_sum only
  double alpha = 0.0;  // fitted exponent of r over the tail window
  double beta = 0.0;   // fitted exponent of log r
  std::vector<int> failing_radii;    // decay criterion
  bool finitely_many_checked = true;
  std::string note;
};

/// Summability verdict for sum_r m(B_r)/w(r,r+1) (or (r+1)/w(r,r+1)):
/// the tail half of the summands is fitted to c * r^alpha (log r)^beta and
/// classified divergent/convergent with a dead zone around the harmonic
/// boundary; short truncations are inconclusive.
CompletenessVerdict stochastic_completeness_bdc(
    const BirthDeathChain& chain, SummandKind kind = SummandKind::ball_measure);

/// kappa(r) >= -C log r for every computed radius; sphere curvatures come
/// from the closed form on chains and the dual LP on graphs.
CompletenessVerdict curvature_decay_verdict(const BirthDeathChain& chain, double C);
CompletenessVerdict curvature_decay_verdict(const WeightedGraph& g, Vertex x0,
                                            double C);

}  // namespace curvelab

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "curvelab/finite_measure.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

/// Heat semigroup P_t = e^{t Delta} on a finite graph through the
/// eigendecomposition of the symmetrized operator M^{1/2} Delta M^{-1/2}.
/// Immutable after construction and safe to share between threads.
class HeatPropagator {
 public:
  explicit HeatPropagator(WeightedGraph g);

  const WeightedGraph& graph() const { return graph_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  /// P_t f; throws NegativeTime for t < 0.
  std::vector<double> apply(double t, const std::vector<double>& f) const;

  /// Row x holds the heat kernel p_t^x(y) = P_t 1_y(x); entries are clamped
  /// at 0 so monotonicity arguments hold exactly in floating point.
  Eigen::MatrixXd kernel_matrix(double t) const;

  /// p_t^x as a measure on all vertices (t = 0 gives the Dirac measure).
  FiniteMeasure heat_kernel(double t, Vertex x) const;

 private:
  WeightedGraph graph_;
  Eigen::VectorXd sqrt_m_;
  Eigen::VectorXd eigenvalues_;   // all <= 0, largest is the simple 0
  Eigen::MatrixXd eigenvectors_;  // orthonormal columns of the symmetrization
};

/// m_x^eps(y) = 1_y(x) + eps * Delta 1_y(x); requires eps <= 1/Deg(x).
FiniteMeasure markov_kernel(const WeightedGraph& g, Vertex x, double eps);

/// e^{t Delta_W} f with Delta_W g = 1_W Delta(1_W g): absorbing boundary on
/// the complement. f must be supported in W.
std::vector<double> dirichlet_semigroup(const WeightedGraph& g,
                                        const std::vector<Vertex>& w_set,
                                        double t, const std::vector<double>& f);

struct CutoffState {
  std::vector<double> phi;
  std::vector<double> f;  // clamped to [0, phi]
  double t = 0.0;
  int n_steps = 0;
  std::vector<double> values;  // (Q_{t/n}^phi)^n f
  bool converged = false;
};

/// One uniform-partition product (Q_{t/n}^phi)^n f.
CutoffState cutoff_semigroup(const HeatPropagator& prop,
                             const std::vector<double>& phi, double t,
                             const std::vector<double>& f, int n_steps);

/// Doubling/extrapolation limit of the uniform-partition products; stops
/// when successive extrapolants differ by at most `tol` in sup norm.
CutoffState cutoff_semigroup_limit(const HeatPropagator& prop,
                                   const std::vector<double>& phi, double t,
                                   const std::vector<double>& f,
                                   double tol = 1e-8);

/// Uniform-partition values for n = 1, 2, 4, ..., 2^levels, all computed
/// from the one nonnegative step matrix at resolution t / 2^levels with caps
/// at the partition boundaries. Coarser partitions cap after a subset of the
/// same monotone steps, so refinement decreases the values *exactly* in
/// floating point.
std::vector<CutoffState> cutoff_refinement(const HeatPropagator& prop,
                                           const std::vector<double>& phi,
                                           double t, const std::vector<double>& f,
                                           int levels);

struct CheckLine {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool ok = true;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool all_ok() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
};

/// Numeric checks of the cutoff-semigroup laws: semigroup composition,
/// 1- and sup-norm contraction, identity at t = 0, monotonicity in (phi, f),
/// the Dirichlet sandwich, time regularity and the Dirichlet identity.
CheckReport cutoff_property_suite(const HeatPropagator& prop,
                                  const std::vector<double>& phi,
                                  std::vector<double> f, std::vector<double> g,
                                  double s, double t);

double grad_norm_inf(const WeightedGraph& g, const std::vector<double>& f);

/// ||grad P_t f||_inf <= e^{-Kt} ||grad f||_inf for each t; requires
/// K <= ric_lower_bound(g).
CheckReport gradient_decay_check(const WeightedGraph& g,
                                 const std::vector<double>& f, double K,
                                 const std::vector<double>& times);

/// W(p_t^x, p_t^y) <= e^{-Kt} d(x,y) for each t.
CheckReport kernel_contraction_check(const WeightedGraph& g, Vertex x, Vertex y,
                                     double K, const std::vector<double>& times);

struct RecoveryReport {
  std::vector<double> times;
  std::vector<double> estimates;  // (1/t)(1 - W(p_t^x, p_t^y)/d)
  double extrapolated = 0.0;
  double kappa_ref = 0.0;          // dual LP value
  double max_wpm_over_t2 = 0.0;    // sup_t W(p_x^t, m_x^t) / t^2 over the grid
};

/// Curvature recovery from continuous time, Richardson-extrapolated over a
/// decreasing time grid.
RecoveryReport curvature_recovery(const WeightedGraph& g, Vertex x, Vertex y,
                                  const std::vector<double>& times);

/// P_t d(x0,.) <= e^{Kt} (d(x0,.) + Deg(x0)/K) under Ric >= -K, K > 0.
CheckReport subharmonic_bound_check(const WeightedGraph& g, Vertex x0, double K,
                                    double t);

}  // namespace curvelab

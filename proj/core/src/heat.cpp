#include "curvelab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "curvelab/curvature.hpp"
#include "curvelab/error.hpp"
#include "curvelab/transport.hpp"

namespace curvelab {

namespace {

void check_time(double t) {
  if (t < 0.0) raise(errc::negative_time, "t = " + std::to_string(t));
}

Eigen::VectorXd to_eigen(const std::vector<double>& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

HeatPropagator::HeatPropagator(WeightedGraph g) : graph_(std::move(g)) {
  int n = graph_.size();
  sqrt_m_.resize(n);
  for (int x = 0; x < n; ++x) sqrt_m_[x] = std::sqrt(graph_.measure(x));
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    sym(x, x) = -graph_.degree(x);
    for (auto [y, w] : graph_.neighbors(x)) sym(x, y) = w / (sqrt_m_[x] * sqrt_m_[y]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    raise(errc::eigen_failure, "symmetric eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  // The operator is negative semidefinite; clamp rounding noise.
  for (int i = 0; i < n; ++i) eigenvalues_[i] = std::min(eigenvalues_[i], 0.0);
}

std::vector<double> HeatPropagator::apply(double t, const std::vector<double>& f) const {
  check_time(t);
  if (static_cast<int>(f.size()) != graph_.size())
    raise(errc::dimension_mismatch, "function size != vertex count");
  if (t == 0.0) return f;
  Eigen::VectorXd v = to_eigen(f).cwiseProduct(sqrt_m_);
  Eigen::VectorXd spectral = eigenvectors_.transpose() * v;
  for (int i = 0; i < spectral.size(); ++i) spectral[i] *= std::exp(t * eigenvalues_[i]);
  Eigen::VectorXd out = (eigenvectors_ * spectral).cwiseQuotient(sqrt_m_);
  return from_eigen(out);
}

Eigen::MatrixXd HeatPropagator::kernel_matrix(double t) const {
  check_time(t);
  int n = graph_.size();
  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i) scale[i] = std::exp(t * eigenvalues_[i]);
  Eigen::MatrixXd core = eigenvectors_ * scale.asDiagonal() * eigenvectors_.transpose();
  Eigen::MatrixXd out =
      sqrt_m_.cwiseInverse().asDiagonal() * core * sqrt_m_.asDiagonal();
  return out.cwiseMax(0.0);
}

FiniteMeasure HeatPropagator::heat_kernel(double t, Vertex x) const {
  check_time(t);
  if (t == 0.0) return FiniteMeasure::dirac(x);
  int n = graph_.size();
  std::vector<double> mass(n, 0.0);
  // p_t^x(y) = sum_k e^{t lambda_k} U(x,k) U(y,k) sqrt(m_y)/sqrt(m_x)
  Eigen::VectorXd row = eigenvectors_.row(x).transpose();
  for (int k = 0; k < n; ++k) row[k] *= std::exp(t * eigenvalues_[k]);
  Eigen::VectorXd vals = eigenvectors_ * row;
  for (int y = 0; y < n; ++y)
    mass[y] = std::max(0.0, vals[y] * sqrt_m_[y] / sqrt_m_[x]);
  return FiniteMeasure::from_dense(mass);
}

FiniteMeasure markov_kernel(const WeightedGraph& g, Vertex x, double eps) {
  if (!(eps > 0.0)) raise(errc::invalid_argument, "eps must be positive");
  double cap = 1.0 / g.degree(x);
  if (eps > cap + 1e-15)
    raise(errc::eps_too_large,
          "eps = " + std::to_string(eps) + " > 1/Deg = " + std::to_string(cap));
  std::vector<Vertex> support;
  std::vector<double> mass;
  double neighbor_total = 0.0;
  for (auto [y, w] : g.neighbors(x)) {
    support.push_back(y);
    mass.push_back(eps * w / g.measure(x));
    neighbor_total += mass.back();
  }
  support.push_back(x);
  mass.push_back(std::max(0.0, 1.0 - neighbor_total));
  return FiniteMeasure(std::move(support), std::move(mass));
}

std::vector<double> dirichlet_semigroup(const WeightedGraph& g,
                                        const std::vector<Vertex>& w_set,
                                        double t, const std::vector<double>& f) {
  check_time(t);
  if (w_set.empty()) raise(errc::empty_subset, "Dirichlet set W is empty");
  if (static_cast<int>(f.size()) != g.size())
    raise(errc::dimension_mismatch, "function size != vertex count");
  std::vector<Vertex> w_sorted = w_set;
  std::sort(w_sorted.begin(), w_sorted.end());
  w_sorted.erase(std::unique(w_sorted.begin(), w_sorted.end()), w_sorted.end());
  std::vector<int> idx(g.size(), -1);
  for (std::size_t i = 0; i < w_sorted.size(); ++i) idx[w_sorted[i]] = static_cast<int>(i);
  for (Vertex v = 0; v < g.size(); ++v)
    if (idx[v] < 0 && f[v] != 0.0)
      raise(errc::invalid_argument, "f must be supported in W");

  int k = static_cast<int>(w_sorted.size());
  Eigen::VectorXd sqrt_m(k);
  for (int i = 0; i < k; ++i) sqrt_m[i] = std::sqrt(g.measure(w_sorted[i]));
  // Restricted generator keeps the full weighted degree on the diagonal, so
  // mass leaks through the (absorbing) boundary.
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    Vertex x = w_sorted[i];
    sym(i, i) = -g.degree(x);
    for (auto [y, w] : g.neighbors(x))
      if (idx[y] >= 0) sym(i, idx[y]) = w / (sqrt_m[i] * sqrt_m[idx[y]]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    raise(errc::eigen_failure, "Dirichlet eigendecomposition failed");

  Eigen::VectorXd fw(k);
  for (int i = 0; i < k; ++i) fw[i] = f[w_sorted[i]] * sqrt_m[i];
  Eigen::VectorXd spectral = solver.eigenvectors().transpose() * fw;
  for (int i = 0; i < k; ++i)
    spectral[i] *= std::exp(t * std::min(solver.eigenvalues()[i], 0.0));
  Eigen::VectorXd out = solver.eigenvectors() * spectral;
  std::vector<double> result(g.size(), 0.0);
  for (int i = 0; i < k; ++i) result[w_sorted[i]] = out[i] / sqrt_m[i];
  return result;
}

namespace {

std::vector<double> clamp_below(const std::vector<double>& f,
                                const std::vector<double>& phi) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::min(f[i], phi[i]);
  return out;
}

void check_cutoff_inputs(const HeatPropagator& prop, const std::vector<double>& phi,
                         const std::vector<double>& f) {
  if (static_cast<int>(phi.size()) != prop.graph().size() ||
      static_cast<int>(f.size()) != prop.graph().size())
    raise(errc::dimension_mismatch, "phi/f size != vertex count");
  for (double p : phi)
    if (p < 0.0) raise(errc::negative_phi, "phi must be nonnegative");
  for (double v : f)
    if (v < 0.0) raise(errc::invalid_argument, "f must be nonnegative");
}

std::vector<double> cutoff_product(const Eigen::MatrixXd& step,
                                   const std::vector<double>& phi,
                                   const std::vector<double>& v, int n_steps) {
  Eigen::VectorXd cur = to_eigen(v);
  Eigen::VectorXd cap = to_eigen(phi);
  for (int s = 0; s < n_steps; ++s) cur = (step * cur).cwiseMin(cap);
  return from_eigen(cur);
}

}  // namespace

CutoffState cutoff_semigroup(const HeatPropagator& prop,
                             const std::vector<double>& phi, double t,
                             const std::vector<double>& f, int n_steps) {
  check_time(t);
  check_cutoff_inputs(prop, phi, f);
  if (n_steps < 1) raise(errc::invalid_argument, "n_steps >= 1 required");
  CutoffState state;
  state.phi = phi;
  state.f = clamp_below(f, phi);
  state.t = t;
  state.n_steps = n_steps;
  if (t == 0.0) {
    state.values = state.f;
    state.converged = true;
    return state;
  }
  // p_t^x rows are clamped at 0, so the step matrix is entrywise nonnegative
  // and the capped products are exactly monotone in refinement.
  Eigen::MatrixXd step = prop.kernel_matrix(t / n_steps);
  state.values = cutoff_product(step, phi, state.f, n_steps);
  return state;
}

std::vector<CutoffState> cutoff_refinement(const HeatPropagator& prop,
                                           const std::vector<double>& phi,
                                           double t, const std::vector<double>& f,
                                           int levels) {
  check_time(t);
  check_cutoff_inputs(prop, phi, f);
  if (levels < 0 || levels > 24)
    raise(errc::invalid_argument, "levels must lie in 0..24");
  int base = 1 << levels;
  Eigen::MatrixXd step = prop.kernel_matrix(t / base);
  Eigen::VectorXd cap = to_eigen(phi);
  std::vector<CutoffState> out;
  for (int j = 0; j <= levels; ++j) {
    int n = 1 << j;
    int stride = base / n;
    CutoffState state;
    state.phi = phi;
    state.f = clamp_below(f, phi);
    state.t = t;
    state.n_steps = n;
    Eigen::VectorXd cur = to_eigen(state.f);
    for (int s = 1; s <= base; ++s) {
      cur = step * cur;
      if (s % stride == 0) cur = cur.cwiseMin(cap);
    }
    state.values = from_eigen(cur);
    out.push_back(std::move(state));
  }
  return out;
}

CutoffState cutoff_semigroup_limit(const HeatPropagator& prop,
                                   const std::vector<double>& phi, double t,
                                   const std::vector<double>& f, double tol) {
  check_time(t);
  check_cutoff_inputs(prop, phi, f);
  CutoffState state;
  state.phi = phi;
  state.f = clamp_below(f, phi);
  state.t = t;
  if (t == 0.0) {
    state.values = state.f;
    state.n_steps = 1;
    state.converged = true;
    return state;
  }

  auto sup_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };

  // The raw doubling differences can vanish spuriously while the partition
  // is still too coarse for the cap to bind, so convergence requires two
  // consecutive small differences past a minimum refinement.
  const int max_steps = 1 << 18;
  const int min_steps = 16;
  std::vector<double> prev = cutoff_semigroup(prop, phi, t, f, 1).values;
  std::vector<double> extrap(prev.size());
  bool prev_met = false;
  int n = 2;
  for (; n <= max_steps; n *= 2) {
    std::vector<double> cur = cutoff_semigroup(prop, phi, t, f, n).values;
    // First-order Richardson: the uniform-partition error decays like 1/n.
    for (std::size_t i = 0; i < cur.size(); ++i) extrap[i] = 2.0 * cur[i] - prev[i];
    bool met = sup_diff(cur, prev) <= tol;
    if (met && prev_met && n >= min_steps) {
      state.converged = true;
      break;
    }
    prev_met = met;
    prev = std::move(cur);
  }
  state.values = extrap;
  state.n_steps = std::min(n, max_steps);
  for (std::size_t i = 0; i < state.values.size(); ++i)
    state.values[i] = std::clamp(state.values[i], 0.0, phi[i]);
  return state;
}

namespace {

double sup_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l1_norm_diff(const WeightedGraph& g, const std::vector<double>& a,
                    const std::vector<double>& b) {
  double acc = 0.0;
  for (int x = 0; x < g.size(); ++x) acc += g.measure(x) * std::abs(a[x] - b[x]);
  return acc;
}

}  // namespace

CheckReport cutoff_property_suite(const HeatPropagator& prop,
                                  const std::vector<double>& phi,
                                  std::vector<double> f, std::vector<double> g,
                                  double s, double t) {
  check_cutoff_inputs(prop, phi, f);
  check_cutoff_inputs(prop, phi, g);
  const WeightedGraph& graph = prop.graph();
  int n = graph.size();
  f = clamp_below(f, phi);
  g = clamp_below(g, phi);
  CheckReport report;
  auto push = [&](const std::string& name, double lhs, double rhs, double tol) {
    report.lines.push_back({name, lhs, rhs, tol, lhs <= rhs + tol});
  };

  auto pf_t = cutoff_semigroup_limit(prop, phi, t, f).values;
  auto pf_s = cutoff_semigroup_limit(prop, phi, s, f).values;
  auto pf_ts = cutoff_semigroup_limit(prop, phi, t + s, f).values;
  auto pf_t_of_s = cutoff_semigroup_limit(prop, phi, t, pf_s).values;
  push("(i) semigroup composition", sup_norm_diff(pf_t_of_s, pf_ts), 0.0, 1e-6);

  auto pg_t = cutoff_semigroup_limit(prop, phi, t, g).values;
  push("(ii) sup-norm contraction", sup_norm_diff(pf_t, pg_t),
       sup_norm_diff(f, g), 1e-8);
  push("(ii) 1-norm contraction", l1_norm_diff(graph, pf_t, pg_t),
       l1_norm_diff(graph, f, g), 1e-8);

  auto pf_0 = cutoff_semigroup_limit(prop, phi, 0.0, f).values;
  push("(iii) identity at t=0", sup_norm_diff(pf_0, f), 0.0, 0.0);

  // (iv) monotonicity for phi >= psi >= f' >= g with f' = f v g.
  {
    std::vector<double> f_up(n), psi(n);
    for (int i = 0; i < n; ++i) {
      f_up[i] = std::max(f[i], g[i]);
      psi[i] = 0.5 * (phi[i] + f_up[i]);
    }
    auto hi = cutoff_semigroup_limit(prop, phi, t, f_up).values;
    auto lo = cutoff_semigroup_limit(prop, psi, t, g).values;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, lo[i] - hi[i]);
    push("(iv) monotone in (phi, f)", worst, 0.0, 1e-8);
  }

  // (v) sandwich e^{-t Deg} f <= P_t^phi f <= P_t f.
  {
    auto heat = prop.apply(t, f);
    double low_excess = 0.0, high_excess = 0.0;
    for (int i = 0; i < n; ++i) {
      low_excess = std::max(low_excess, std::exp(-t * graph.degree(i)) * f[i] - pf_t[i]);
      high_excess = std::max(high_excess, pf_t[i] - heat[i]);
    }
    push("(v) lower sandwich", low_excess, 0.0, 1e-8);
    push("(v) upper sandwich", high_excess, 0.0, 1e-8);
  }

  // (vi)-(viii) probed by finite differences, step 1e-4, tolerance 1e-3.
  {
    const double h = 1e-4;
    auto plus = cutoff_semigroup_limit(prop, phi, t + h, f).values;
    auto minus = cutoff_semigroup_limit(prop, phi, std::max(0.0, t - h), f).values;
    double phi_max = *std::max_element(phi.begin(), phi.end());
    double lipschitz_bound = 2.0 * graph.degree_max() * phi_max + 1.0;
    push("(vi) Lipschitz in t", sup_norm_diff(plus, pf_t) / h, lipschitz_bound, 1e-3);

    auto lap = graph.laplacian(pf_t);
    double fwd_excess = 0.0, bwd_excess = 0.0, below_err = 0.0;
    for (int i = 0; i < n; ++i) {
      double dplus = (plus[i] - pf_t[i]) / h;
      double dminus = (pf_t[i] - minus[i]) / h;
      fwd_excess = std::max(fwd_excess, dplus - lap[i]);
      bwd_excess = std::max(bwd_excess, dminus - lap[i]);
      if (pf_t[i] < phi[i] - 1e-3) {
        double central = (plus[i] - minus[i]) / (2.0 * h);
        below_err = std::max(below_err, std::abs(central - lap[i]));
      }
    }
    push("(vii) d/dt+ <= Delta", fwd_excess, 0.0, 1e-3);
    push("(vii) d/dt- <= Delta", bwd_excess, 0.0, 1e-3);
    push("(viii) heat equation below phi", below_err, 0.0, 1e-3);
  }

  // (ix) Dirichlet identity when phi is an indicator.
  {
    bool indicator = true;
    std::vector<Vertex> w_set;
    for (int i = 0; i < n; ++i) {
      if (phi[i] == 1.0)
        w_set.push_back(i);
      else if (phi[i] != 0.0)
        indicator = false;
    }
    if (indicator && !w_set.empty()) {
      auto dirichlet = dirichlet_semigroup(graph, w_set, t, f);
      push("(ix) Dirichlet identity", sup_norm_diff(pf_t, dirichlet), 0.0, 1e-6);
    }
  }
  return report;
}

double grad_norm_inf(const WeightedGraph& g, const std::vector<double>& f) {
  double m = 0.0;
  for (const auto& e : g.edges()) m = std::max(m, std::abs(f[e.u] - f[e.v]));
  return m;
}

namespace {

void check_ric_precondition(const WeightedGraph& g, double K) {
  double ric = ric_lower_bound(g);
  if (K > ric + 1e-12)
    raise(errc::curvature_precondition_failed,
          "K = " + std::to_string(K) + " exceeds Ric(G) = " + std::to_string(ric));
}

}  // namespace

CheckReport gradient_decay_check(const WeightedGraph& g,
                                 const std::vector<double>& f, double K,
                                 const std::vector<double>& times) {
  check_ric_precondition(g, K);
  HeatPropagator prop(g);
  double base = grad_norm_inf(g, f);
  CheckReport report;
  for (double t : times) {
    double lhs = grad_norm_inf(g, prop.apply(t, f));
    double rhs = std::exp(-K * t) * base;
    report.lines.push_back({"grad decay t=" + std::to_string(t), lhs, rhs, 1e-8,
                            lhs <= rhs + 1e-8});
  }
  return report;
}

CheckReport kernel_contraction_check(const WeightedGraph& g, Vertex x, Vertex y,
                                     double K, const std::vector<double>& times) {
  check_ric_precondition(g, K);
  HeatPropagator prop(g);
  double d0 = g.distance(x, y);
  CheckReport report;
  for (double t : times) {
    double lhs = wasserstein(g, prop.heat_kernel(t, x), prop.heat_kernel(t, y)).value;
    double rhs = std::exp(-K * t) * d0;
    report.lines.push_back({"kernel contraction t=" + std::to_string(t), lhs, rhs,
                            1e-8, lhs <= rhs + 1e-8});
  }
  return report;
}

RecoveryReport curvature_recovery(const WeightedGraph& g, Vertex x, Vertex y,
                                  const std::vector<double>& times) {
  if (times.empty()) raise(errc::invalid_argument, "need a nonempty time grid");
  for (double t : times)
    if (!(t > 0.0)) raise(errc::invalid_argument, "times must be positive");
  HeatPropagator prop(g);
  double d0 = g.distance(x, y);
  RecoveryReport report;
  report.times = times;
  std::sort(report.times.begin(), report.times.end(), std::greater<double>());
  double eps_cap = 1.0 / g.degree(x);
  for (double t : report.times) {
    double w = wasserstein(g, prop.heat_kernel(t, x), prop.heat_kernel(t, y)).value;
    report.estimates.push_back((1.0 - w / d0) / t);
    if (t <= eps_cap + 1e-15) {
      double wpm = wasserstein(g, prop.heat_kernel(t, x), markov_kernel(g, x, t)).value;
      report.max_wpm_over_t2 = std::max(report.max_wpm_over_t2, wpm / (t * t));
    }
  }
  // Polynomial extrapolation to t = 0 through the smallest few grid points.
  {
    int k = static_cast<int>(report.times.size());
    int use = std::min(4, k);
    std::vector<double> ts(report.times.end() - use, report.times.end());
    std::vector<double> vals(report.estimates.end() - use, report.estimates.end());
    for (int level = 1; level < use; ++level)
      for (int i = 0; i < use - level; ++i)
        vals[i] = (0.0 - ts[i + level]) * (vals[i] - vals[i + 1]) /
                      (ts[i] - ts[i + level]) +
                  vals[i + 1];
    report.extrapolated = vals[0];
  }
  report.kappa_ref = ollivier_dual(g, x, y).kappa;
  return report;
}

CheckReport subharmonic_bound_check(const WeightedGraph& g, Vertex x0, double K,
                                    double t) {
  if (!(K > 0.0)) raise(errc::invalid_argument, "needs K > 0");
  check_time(t);
  double ric = ric_lower_bound(g);
  if (-K > ric + 1e-12)
    raise(errc::curvature_precondition_failed,
          "-K must lower-bound Ric(G) = " + std::to_string(ric));
  auto dist = g.distances(x0);
  std::vector<double> f(dist.begin(), dist.end());
  HeatPropagator prop(g);
  auto heat = prop.apply(t, f);
  double offset = g.degree(x0) / K;
  double excess = 0.0;
  for (int i = 0; i < g.size(); ++i)
    excess = std::max(excess, heat[i] - std::exp(K * t) * (f[i] + offset));
  CheckReport report;
  report.lines.push_back({"subharmonic bound", excess, 0.0, 1e-8, excess <= 1e-8});
  return report;
}

}  // namespace curvelab

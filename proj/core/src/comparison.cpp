#include "curvelab/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvelab/curvature.hpp"
#include "curvelab/error.hpp"

namespace curvelab {

LaplacianComparisonResult laplacian_comparison(const WeightedGraph& g, Vertex x0,
                                               double K, int check_radius,
                                               double tol) {
  auto dist = g.distances(x0);
  double kmin = std::numeric_limits<double>::infinity();
  for (Vertex y = 0; y < g.size(); ++y) {
    if (y == x0) continue;
    if (check_radius >= 0 && dist[y] > check_radius) continue;
    kmin = std::min(kmin, ollivier_dual(g, x0, y).kappa);
  }
  if (K > kmin + tol)
    raise(errc::curvature_precondition_failed,
          "K = " + std::to_string(K) + " exceeds min kappa(x0,.) = " +
              std::to_string(kmin));

  std::vector<double> f(dist.begin(), dist.end());
  auto lap = g.laplacian(f);
  double deg0 = g.degree(x0);
  LaplacianComparisonResult res;
  res.max_excess = -std::numeric_limits<double>::infinity();
  for (Vertex x = 0; x < g.size(); ++x)
    res.max_excess = std::max(res.max_excess, lap[x] - (deg0 - K * f[x]));
  res.holds = res.max_excess <= tol;
  return res;
}

ComparisonProfile comparison_profile(const WeightedGraph& g, Vertex x0, int r_max,
                                     double tol) {
  auto sd = sphere_decomposition(g, x0);
  ComparisonProfile profile;
  profile.root = x0;
  profile.r_max = r_max < 0 ? sd.r_max() : std::min(r_max, sd.r_max());
  if (r_max > sd.r_max())
    raise(errc::invalid_argument, "r_max exceeds the eccentricity of x0");

  profile.phi.assign(profile.r_max + 1, 0.0);
  profile.kappa_r.assign(profile.r_max + 1, 0.0);
  profile.phi[0] = g.degree(x0);
  for (int r = 1; r <= profile.r_max; ++r) {
    profile.kappa_r[r] = sphere_curvature(g, sd, r);
    profile.phi[r] = profile.phi[r - 1] - profile.kappa_r[r];
  }

  std::vector<double> f(sd.dist.begin(), sd.dist.end());
  profile.lap_values = g.laplacian(f);
  for (Vertex x = 0; x < g.size(); ++x) {
    if (sd.dist[x] > profile.r_max) continue;
    double excess = profile.lap_values[x] - profile.phi[sd.dist[x]];
    if (excess > tol) profile.violations.push_back({x, excess});
  }
  return profile;
}

BirthDeathChain associated_bdc(const WeightedGraph& g, Vertex x0) {
  auto sd = sphere_decomposition(g, x0);
  int rmax = sd.r_max();
  std::vector<double> m(rmax + 1, 0.0), w(rmax, 0.0);
  for (Vertex x = 0; x < g.size(); ++x) {
    int r = sd.dist[x];
    m[r] += g.measure(x);
    if (r < rmax) w[r] += sd.deg_plus[x] * g.measure(x);  // sum w(x, S_{r+1})
  }
  return BirthDeathChain(w, m, /*exact_end=*/true);
}

bool bdc_comparison_transfer(const WeightedGraph& g, Vertex x0,
                             const std::vector<double>& phi, double tol) {
  auto dist = g.distances(x0);
  std::vector<double> f(dist.begin(), dist.end());
  auto lap = g.laplacian(f);
  int rmax = *std::max_element(dist.begin(), dist.end());
  if (static_cast<int>(phi.size()) < rmax + 1)
    raise(errc::invalid_argument, "phi must cover radii 0..eccentricity");
  for (Vertex x = 0; x < g.size(); ++x)
    if (lap[x] > phi[dist[x]] + tol)
      raise(errc::invalid_argument, "graph-side comparison does not hold");

  auto chain = associated_bdc(g, x0);
  auto cg = chain.to_graph();
  std::vector<double> ftilde(chain.radius() + 1);
  for (int r = 0; r <= chain.radius(); ++r) ftilde[r] = r;
  auto lap_tilde = cg.laplacian(ftilde);
  for (int r = 0; r <= chain.radius(); ++r)
    if (lap_tilde[r] > phi[r] + tol) return false;
  return true;
}

CurvatureComparison curvature_comparison(const WeightedGraph& g, Vertex x0, int R) {
  auto sd = sphere_decomposition(g, x0);
  if (R < 1 || R > sd.r_max())
    raise(errc::truncation_exceeded, "R must lie in 1..eccentricity");
  auto chain = associated_bdc(g, x0);
  CurvatureComparison cmp;
  for (int r = 1; r <= R; ++r) {
    cmp.sum_graph += sphere_curvature(g, sd, r);
    cmp.sum_tilde += bdc_curvature(chain, r - 1, r);
  }
  return cmp;
}

DiameterBound simple_diameter_bound(const WeightedGraph& g, Vertex x, Vertex y) {
  if (x == y) raise(errc::invalid_argument, "need x != y");
  double kappa = ollivier_dual(g, x, y).kappa;
  if (!(kappa > 0.0))
    raise(errc::non_positive_curvature, "kappa = " + std::to_string(kappa));
  DiameterBound out;
  out.bound = (g.degree(x) + g.degree(y)) / kappa;
  out.holds = g.distance(x, y) <= out.bound + 1e-9;
  return out;
}

std::vector<RadiusRecord> improved_diameter_check(const WeightedGraph& g, Vertex x0,
                                                  double tol) {
  auto sd = sphere_decomposition(g, x0);
  std::vector<RadiusRecord> records;
  double kappa_sum = 0.0;
  for (int R = 1; R <= sd.r_max(); ++R) {
    kappa_sum += sphere_curvature(g, sd, R);
    double inner = std::numeric_limits<double>::infinity();
    for (Vertex x : sd.spheres[R])
      inner = std::min(inner, sd.deg_minus[x] - sd.deg_plus[x]);
    RadiusRecord rec;
    rec.radius = R;
    rec.kappa_sum = kappa_sum;
    rec.rhs = g.degree(x0) + inner;
    rec.slack = rec.rhs - kappa_sum;
    rec.holds = kappa_sum <= rec.rhs + tol;
    records.push_back(rec);
  }
  return records;
}

FiniteMeasureCheck finite_measure_check(const WeightedGraph& g, Vertex x0) {
  auto sd = sphere_decomposition(g, x0);
  FiniteMeasureCheck out;
  out.threshold = g.degree(x0);
  double acc = 0.0;
  for (int r = 1; r <= sd.r_max(); ++r) {
    acc += sphere_curvature(g, sd, r);
    out.kappa_partial_sums.push_back(acc);
    if (acc > out.threshold) out.exceeds_threshold = true;
  }
  for (Vertex x = 0; x < g.size(); ++x) out.m_total += g.measure(x);
  return out;
}

const char* completeness_name(Completeness c) {
  switch (c) {
    case Completeness::complete: return "complete";
    case Completeness::incomplete: return "incomplete";
    case Completeness::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Least squares of log s_r against (1, log r, log log r) over the tail.
struct TailFit {
  double alpha = 0.0;
  double beta = 0.0;
  bool usable = false;
};

TailFit fit_tail(const std::vector<int>& rs, const std::vector<double>& ss) {
  TailFit fit;
  int k = static_cast<int>(rs.size());
  if (k < 3) return fit;
  double a[3][3] = {};
  double rhs[3] = {};
  for (int i = 0; i < k; ++i) {
    if (!(ss[i] > 0.0)) return fit;
    double basis[3] = {1.0, std::log(double(rs[i])),
                       std::log(std::log(double(rs[i])))};
    double y = std::log(ss[i]);
    for (int p = 0; p < 3; ++p) {
      rhs[p] += basis[p] * y;
      for (int q = 0; q < 3; ++q) a[p][q] += basis[p] * basis[q];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 normal system.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(a[perm[row]][col]) > std::abs(a[perm[best]][col])) best = row;
    std::swap(perm[col], perm[best]);
    double piv = a[perm[col]][col];
    if (std::abs(piv) < 1e-12) return fit;
    for (int row = col + 1; row < 3; ++row) {
      double factor = a[perm[row]][col] / piv;
      for (int q = col; q < 3; ++q) a[perm[row]][q] -= factor * a[perm[col]][q];
      rhs[perm[row]] -= factor * rhs[perm[col]];
    }
  }
  double sol[3];
  for (int col = 2; col >= 0; --col) {
    double acc = rhs[perm[col]];
    for (int q = col + 1; q < 3; ++q) acc -= a[perm[col]][q] * sol[q];
    sol[col] = acc / a[perm[col]][col];
  }
  fit.alpha = sol[1];
  fit.beta = sol[2];
  fit.usable = true;
  return fit;
}

constexpr int kMinTailPoints = 12;
constexpr double kDeadZone = 0.1;

}  // namespace

CompletenessVerdict stochastic_completeness_bdc(const BirthDeathChain& chain,
                                                SummandKind kind) {
  CompletenessVerdict verdict;
  verdict.criterion = CompletenessCriterion::bdc_sum;
  int N = chain.radius();
  double ball_mass = 0.0;
  double acc = 0.0;
  for (int r = 0; r < N; ++r) {
    ball_mass += chain.measure(r);
    double numer = kind == SummandKind::ball_measure ? ball_mass : double(r + 1);
    verdict.summands.push_back(numer / chain.rate_up(r));
    acc += verdict.summands.back();
    verdict.partial_sums.push_back(acc);
  }

  // Tail window r in [max(2, N/2), N-1]; log log r needs r >= 2.
  std::vector<int> rs;
  std::vector<double> ss;
  for (int r = std::max(2, N / 2); r < N; ++r) {
    rs.push_back(r);
    ss.push_back(verdict.summands[r]);
  }
  if (static_cast<int>(rs.size()) < kMinTailPoints) {
    verdict.note = "truncation too short for a tail fit";
    return verdict;
  }
  auto fit = fit_tail(rs, ss);
  if (!fit.usable) {
    verdict.note = "tail fit failed";
    return verdict;
  }
  verdict.alpha = fit.alpha;
  verdict.beta = fit.beta;
  bool near_harmonic = std::abs(fit.alpha + 1.0) <= kDeadZone;
  if (fit.alpha < -1.0 - kDeadZone || (near_harmonic && fit.beta < -1.0 - kDeadZone))
    verdict.status = Completeness::incomplete;
  else if (fit.alpha > -1.0 + kDeadZone ||
           (near_harmonic && fit.beta > -1.0 + kDeadZone))
    verdict.status = Completeness::complete;
  else
    verdict.note = "fitted exponents in the dead zone";
  return verdict;
}

namespace {

CompletenessVerdict decay_verdict_from(const std::vector<double>& kappas, double C) {
  // kappas[i] is the sphere curvature at radius i+1.
  CompletenessVerdict verdict;
  verdict.criterion = CompletenessCriterion::curvature_decay;
  verdict.summands = kappas;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    int r = static_cast<int>(i) + 1;
    if (kappas[i] < -C * std::log(double(r)) - 1e-12)
      verdict.failing_radii.push_back(r);
  }
  verdict.status = verdict.failing_radii.empty() ? Completeness::complete
                                                 : Completeness::inconclusive;
  verdict.finitely_many_checked = true;
  if (verdict.status == Completeness::complete)
    verdict.note = "decay bound verified on finitely many radii only";
  return verdict;
}

}  // namespace

CompletenessVerdict curvature_decay_verdict(const BirthDeathChain& chain, double C) {
  std::vector<double> kappas;
  for (int r = 1; r < chain.radius(); ++r)
    kappas.push_back(bdc_curvature(chain, r - 1, r));
  if (chain.exact_end() && chain.radius() >= 1)
    kappas.push_back(bdc_curvature(chain, chain.radius() - 1, chain.radius()));
  return decay_verdict_from(kappas, C);
}

CompletenessVerdict curvature_decay_verdict(const WeightedGraph& g, Vertex x0,
                                            double C) {
  auto sd = sphere_decomposition(g, x0);
  std::vector<double> kappas;
  for (int r = 1; r <= sd.r_max(); ++r)
    kappas.push_back(sphere_curvature(g, sd, r));
  return decay_verdict_from(kappas, C);
}

}  // namespace curvelab

#include "curvelab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "curvelab/error.hpp"
#include "curvelab/lp_solver.hpp"

namespace curvelab {

namespace {

constexpr double kProbTol = 1e-9;

void check_probability(const FiniteMeasure& mu, const char* name) {
  if (std::abs(mu.total() - 1.0) > kProbTol)
    raise(errc::not_probability,
          std::string(name) + " has total " + std::to_string(mu.total()));
  if (mu.support_size() == 0)
    raise(errc::not_probability, std::string(name) + " is empty");
}

std::vector<std::vector<double>> support_distances(const WeightedGraph& g,
                                                   const std::vector<Vertex>& from,
                                                   const std::vector<Vertex>& to) {
  std::vector<std::vector<double>> d(from.size(), std::vector<double>(to.size()));
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto dist = g.distances(from[i]);
    for (std::size_t j = 0; j < to.size(); ++j) d[i][j] = dist[to[j]];
  }
  return d;
}

// Exact fallback: the transportation LP through the simplex kernel.
TransportPlan transport_simplex(const std::vector<std::vector<double>>& cost,
                                const std::vector<double>& supply,
                                const std::vector<double>& demand) {
  int ns = static_cast<int>(supply.size());
  int nt = static_cast<int>(demand.size());
  int nvar = ns * nt;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto add_eq = [&](const std::vector<double>& row, double rhs) {
    A.push_back(row);
    b.push_back(rhs);
    std::vector<double> neg(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    A.push_back(neg);
    b.push_back(-rhs);
  };
  for (int i = 0; i < ns; ++i) {
    std::vector<double> row(nvar, 0.0);
    for (int j = 0; j < nt; ++j) row[i * nt + j] = 1.0;
    add_eq(row, supply[i]);
  }
  for (int j = 0; j < nt; ++j) {
    std::vector<double> row(nvar, 0.0);
    for (int i = 0; i < ns; ++i) row[i * nt + j] = 1.0;
    add_eq(row, demand[j]);
  }
  std::vector<double> c(nvar);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) c[i * nt + j] = -cost[i][j];
  auto lp = solve_lp(A, b, c);
  if (lp.status != LpStatus::optimal)
    raise(errc::solver_failure, "transportation LP fallback failed");
  TransportPlan plan;
  plan.value = -lp.objective;
  plan.iterations = lp.pivots;
  plan.coupling.mass = lp.x;
  return plan;
}

// Successive shortest augmenting paths with node potentials on the dense
// bipartite transportation graph. Exact for this LP class; the rare
// non-terminating numeric corner falls back to the simplex.
TransportPlan transport_flow(const std::vector<std::vector<double>>& cost,
                             std::vector<double> supply, std::vector<double> demand) {
  int ns = static_cast<int>(supply.size());
  int nt = static_cast<int>(demand.size());
  const double inf = std::numeric_limits<double>::infinity();
  double total = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double mass_tol = 1e-14 * std::max(1.0, total);

  std::vector<std::vector<double>> flow(ns, std::vector<double>(nt, 0.0));
  std::vector<double> pot_s(ns, 0.0), pot_t(nt, 0.0);
  double remaining = total;
  int augmentations = 0;
  const int cap = 8 * (ns + nt) * (ns + nt) + 64;
  // Nodes whose residual mass falls below this are treated as settled; the
  // dropped dust is at most mass_tol in total.
  const double node_tol = mass_tol / (ns + nt + 1);

  while (remaining > mass_tol) {
    if (++augmentations > cap) {
      auto plan = transport_simplex(cost, supply, demand);
      TransportPlan out;
      out.value = plan.value;
      out.iterations = augmentations + plan.iterations;
      out.coupling.mass = plan.coupling.mass;
      return out;
    }
    // Multi-source Dijkstra over reduced costs; nodes 0..ns-1 sources,
    // ns..ns+nt-1 sinks.
    int nn = ns + nt;
    std::vector<double> dist(nn, inf);
    std::vector<int> parent(nn, -1);
    std::vector<char> done(nn, 0);
    std::vector<double> rem_s = supply, rem_t = demand;
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < nt; ++j) rem_s[i] -= flow[i][j];
      if (rem_s[i] > node_tol) dist[i] = 0.0;
    }
    for (int j = 0; j < nt; ++j)
      for (int i = 0; i < ns; ++i) rem_t[j] -= flow[i][j];

    for (;;) {
      int u = -1;
      for (int v = 0; v < nn; ++v)
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      if (u < 0) break;
      done[u] = 1;
      if (u < ns) {
        for (int j = 0; j < nt; ++j) {
          double rc = cost[u][j] - pot_s[u] - pot_t[j];
          if (rc < 0) rc = 0;  // clamp rounding noise
          if (dist[u] + rc < dist[ns + j] - 1e-15) {
            dist[ns + j] = dist[u] + rc;
            parent[ns + j] = u;
          }
        }
      } else {
        int j = u - ns;
        for (int i = 0; i < ns; ++i) {
          if (flow[i][j] <= mass_tol) continue;
          double rc = -(cost[i][j] - pot_s[i] - pot_t[j]);
          if (rc < 0) rc = 0;
          if (dist[u] + rc < dist[i] - 1e-15) {
            dist[i] = dist[u] + rc;
            parent[i] = u;
          }
        }
      }
    }

    int best_sink = -1;
    for (int j = 0; j < nt; ++j)
      if (rem_t[j] > node_tol && dist[ns + j] < inf &&
          (best_sink < 0 || dist[ns + j] < dist[ns + best_sink]))
        best_sink = j;
    if (best_sink < 0) break;  // residual is node-level dust below mass_tol

    // Trace path, find bottleneck.
    std::vector<int> path;  // node sequence source ... sink
    int cur = ns + best_sink;
    while (cur >= 0) {
      path.push_back(cur);
      cur = parent[cur];
    }
    std::reverse(path.begin(), path.end());
    double bottleneck = std::min(rem_s[path.front()], rem_t[best_sink]);
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (path[k] >= ns)  // backward arc sink -> source
        bottleneck = std::min(bottleneck, flow[path[k + 1]][path[k] - ns]);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (path[k] < ns)
        flow[path[k]][path[k + 1] - ns] += bottleneck;
      else
        flow[path[k + 1]][path[k] - ns] -= bottleneck;
    }
    // Reduced costs stay nonnegative under u_i -> u_i - d(i), v_j -> v_j + d(j).
    for (int i = 0; i < ns; ++i)
      if (dist[i] < inf) pot_s[i] -= dist[i];
    for (int j = 0; j < nt; ++j)
      if (dist[ns + j] < inf) pot_t[j] += dist[ns + j];
    remaining -= bottleneck;
  }

  TransportPlan plan;
  plan.iterations = augmentations;
  plan.coupling.mass.resize(ns * nt);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      plan.coupling.mass[i * nt + j] = flow[i][j];
      plan.value += flow[i][j] * cost[i][j];
    }
  return plan;
}

}  // namespace

TransportPlan wasserstein(const WeightedGraph& g, const FiniteMeasure& mu,
                          const FiniteMeasure& nu) {
  check_probability(mu, "mu");
  check_probability(nu, "nu");
  const auto& rows = mu.support();
  const auto& cols = nu.support();
  auto cost = support_distances(g, rows, cols);
  std::vector<double> supply = mu.masses();
  std::vector<double> demand = nu.masses();
  // Balance the tiny rounding imbalance so the flow problem closes exactly.
  double ratio = mu.total() / nu.total();
  for (auto& d : demand) d *= ratio;

  auto plan = transport_flow(cost, supply, demand);
  plan.coupling.rows = rows;
  plan.coupling.cols = cols;
  return plan;
}

DualPotential wasserstein_dual(const WeightedGraph& g, const FiniteMeasure& mu,
                               const FiniteMeasure& nu) {
  check_probability(mu, "mu");
  check_probability(nu, "nu");
  std::vector<Vertex> u_set;
  std::set_union(mu.support().begin(), mu.support().end(), nu.support().begin(),
                 nu.support().end(), std::back_inserter(u_set));
  int k = static_cast<int>(u_set.size());

  std::vector<std::vector<double>> dist(k);
  for (int i = 0; i < k; ++i) {
    auto d = g.distances(u_set[i]);
    dist[i].resize(k);
    for (int j = 0; j < k; ++j) dist[i][j] = d[u_set[j]];
  }

  std::vector<double> weight(k);  // objective coefficients mu - nu
  for (int i = 0; i < k; ++i) weight[i] = mu(u_set[i]) - nu(u_set[i]);

  DualPotential out;
  std::vector<double> f_on_u(k, 0.0);
  if (k > 1) {
    // Pin f(u0) = 0 (objective is shift invariant); substitute
    // g_i = f_i + S >= 0 with S = max_i d(u0, i).
    double shift = *std::max_element(dist[0].begin(), dist[0].end());
    int nvar = k - 1;
    auto var = [&](int i) { return i - 1; };
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    auto add = [&](std::vector<double> row, double rhs) {
      A.push_back(std::move(row));
      b.push_back(rhs);
    };
    for (int i = 1; i < k; ++i) {
      // Pair with the pinned vertex: |f_i - 0| <= d  in terms of g = f + S.
      std::vector<double> up(nvar, 0.0), down(nvar, 0.0);
      up[var(i)] = 1.0;
      down[var(i)] = -1.0;
      add(std::move(up), dist[i][0] + shift);
      add(std::move(down), dist[i][0] - shift);
      for (int j = i + 1; j < k; ++j) {
        std::vector<double> fwd(nvar, 0.0), rev(nvar, 0.0);
        fwd[var(i)] = 1.0;
        fwd[var(j)] = -1.0;
        rev[var(j)] = 1.0;
        rev[var(i)] = -1.0;
        add(std::move(fwd), dist[i][j]);
        add(std::move(rev), dist[i][j]);
      }
    }
    std::vector<double> c(nvar);
    for (int i = 1; i < k; ++i) c[var(i)] = weight[i];
    auto lp = solve_lp(A, b, c);
    if (lp.status == LpStatus::infeasible)
      raise(errc::lp_infeasible, "dual transport LP infeasible (solver bug)");
    if (lp.status == LpStatus::unbounded)
      raise(errc::solver_failure, "dual transport LP unbounded");
    out.pivots = lp.pivots;
    for (int i = 1; i < k; ++i) f_on_u[i] = lp.x[var(i)] - shift;
  }
  for (int i = 0; i < k; ++i) out.value += weight[i] * f_on_u[i];

  // McShane extension to all of V keeps the 1-Lipschitz bound globally.
  out.potential.assign(g.size(), 0.0);
  std::vector<std::vector<int>> dv(k);
  for (int i = 0; i < k; ++i) dv[i] = g.distances(u_set[i]);
  for (Vertex v = 0; v < g.size(); ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) best = std::min(best, f_on_u[i] + dv[i][v]);
    out.potential[v] = best;
  }
  return out;
}

double duality_gap(const WeightedGraph& g, const FiniteMeasure& mu,
                   const FiniteMeasure& nu) {
  return std::abs(wasserstein(g, mu, nu).value - wasserstein_dual(g, mu, nu).value);
}

}  // namespace curvelab

#include "curvelab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "curvelab/assignment.hpp"
#include "curvelab/error.hpp"
#include "curvelab/heat.hpp"
#include "curvelab/lp_solver.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/transport.hpp"

namespace curvelab {

const char* method_name(CurvatureMethod m) {
  switch (m) {
    case CurvatureMethod::dual_lp: return "dual_lp";
    case CurvatureMethod::transport_lp: return "transport_lp";
    case CurvatureMethod::combinatorial: return "combinatorial";
    case CurvatureMethod::bruteforce: return "bruteforce";
    case CurvatureMethod::bdc_closed_form: return "bdc_closed_form";
  }
  return "unknown";
}

namespace {

void check_distinct(Vertex x, Vertex y) {
  if (x == y) raise(errc::invalid_argument, "need x != y");
}

// Laplacian of a function given on a vertex superset containing B_1(x).
double local_laplacian(const WeightedGraph& g,
                       const std::map<Vertex, double>& f, Vertex x) {
  double acc = 0.0;
  double fx = f.at(x);
  for (auto [z, w] : g.neighbors(x)) acc += w * (f.at(z) - fx);
  return acc / g.measure(x);
}

}  // namespace

CurvatureReport ollivier_dual(const WeightedGraph& g, Vertex x, Vertex y) {
  check_distinct(x, y);
  auto ball = g.ball1_union(x, y);
  int k = static_cast<int>(ball.size());
  std::vector<std::vector<int>> dist(k);
  for (int i = 0; i < k; ++i) {
    auto d = g.distances(ball[i]);
    dist[i].resize(k);
    for (int j = 0; j < k; ++j) dist[i][j] = d[ball[j]];
  }
  auto pos = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(ball.begin(), ball.end(), v) -
                            ball.begin());
  };
  int ix = pos(x), iy = pos(y);
  double d0 = dist[ix][iy];

  std::map<Vertex, double> f;
  f[x] = 0.0;
  f[y] = d0;
  CurvatureReport rep;
  rep.method = CurvatureMethod::dual_lp;

  std::vector<int> free_idx;
  for (int i = 0; i < k; ++i)
    if (ball[i] != x && ball[i] != y) free_idx.push_back(i);
  int nvar = static_cast<int>(free_idx.size());

  if (nvar > 0) {
    double shift = 0.0;
    for (int i = 0; i < k; ++i) shift = std::max(shift, double(dist[ix][i]));
    std::vector<int> var_of(k, -1);
    for (int v = 0; v < nvar; ++v) var_of[free_idx[v]] = v;

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    auto add = [&](std::vector<double> row, double rhs) {
      A.push_back(std::move(row));
      b.push_back(rhs);
    };
    for (int a = 0; a < k; ++a)
      for (int c = a + 1; c < k; ++c) {
        bool a_free = var_of[a] >= 0, c_free = var_of[c] >= 0;
        if (!a_free && !c_free) continue;
        double d = dist[a][c];
        if (a_free && c_free) {
          std::vector<double> fwd(nvar, 0.0), rev(nvar, 0.0);
          fwd[var_of[a]] = 1.0;
          fwd[var_of[c]] = -1.0;
          rev[var_of[c]] = 1.0;
          rev[var_of[a]] = -1.0;
          add(std::move(fwd), d);
          add(std::move(rev), d);
        } else {
          int fr = a_free ? a : c;
          int pin = a_free ? c : a;
          double pinned = ball[pin] == x ? 0.0 : d0;
          std::vector<double> up(nvar, 0.0), down(nvar, 0.0);
          up[var_of[fr]] = 1.0;
          down[var_of[fr]] = -1.0;
          add(std::move(up), d + pinned + shift);
          add(std::move(down), d - pinned - shift);
        }
      }
    // Objective: minimize Delta f(x) - Delta f(y); only neighbor values enter.
    std::vector<double> c(nvar, 0.0);
    for (auto [z, w] : g.neighbors(x)) {
      int vz = var_of[pos(z)];
      if (vz >= 0) c[vz] -= w / g.measure(x);  // maximize the negation
    }
    for (auto [z, w] : g.neighbors(y)) {
      int vz = var_of[pos(z)];
      if (vz >= 0) c[vz] += w / g.measure(y);
    }
    auto lp = solve_lp(A, b, c);
    if (lp.status == LpStatus::infeasible)
      raise(errc::lp_infeasible,
            "dual curvature LP infeasible; d(x0,.) is feasible, solver bug");
    if (lp.status == LpStatus::unbounded)
      raise(errc::solver_failure, "dual curvature LP unbounded");
    rep.stats.pivots = lp.pivots;
    for (int v = 0; v < nvar; ++v) f[ball[free_idx[v]]] = lp.x[v] - shift;
  }

  rep.kappa = (local_laplacian(g, f, x) - local_laplacian(g, f, y)) / d0;
  std::vector<std::pair<Vertex, double>> witness(f.begin(), f.end());
  rep.witness_potential = std::move(witness);
  return rep;
}

CurvatureReport ollivier_transport(const WeightedGraph& g, Vertex x0, Vertex y0) {
  check_distinct(x0, y0);
  auto bx = g.ball1(x0);
  auto by = g.ball1(y0);
  int nx = static_cast<int>(bx.size());
  int ny = static_cast<int>(by.size());
  double d0 = g.distance(x0, y0);

  std::vector<std::vector<int>> dist(nx);
  for (int i = 0; i < nx; ++i) {
    auto d = g.distances(bx[i]);
    dist[i].resize(ny);
    for (int j = 0; j < ny; ++j) dist[i][j] = d[by[j]];
  }

  int nvar = nx * ny;
  auto var = [&](int i, int j) { return i * ny + j; };
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto add_eq = [&](const std::vector<double>& row, double rhs) {
    A.push_back(row);
    b.push_back(rhs);
    std::vector<double> neg(row.size());
    for (std::size_t t = 0; t < row.size(); ++t) neg[t] = -row[t];
    A.push_back(std::move(neg));
    b.push_back(-rhs);
  };
  for (int i = 0; i < nx; ++i) {
    if (bx[i] == x0) continue;  // sphere constraint only
    std::vector<double> row(nvar, 0.0);
    for (int j = 0; j < ny; ++j) row[var(i, j)] = 1.0;
    add_eq(row, g.weight(x0, bx[i]) / g.measure(x0));
  }
  for (int j = 0; j < ny; ++j) {
    if (by[j] == y0) continue;
    std::vector<double> row(nvar, 0.0);
    for (int i = 0; i < nx; ++i) row[var(i, j)] = 1.0;
    add_eq(row, g.weight(y0, by[j]) / g.measure(y0));
  }
  std::vector<double> c(nvar);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) c[var(i, j)] = 1.0 - dist[i][j] / d0;
  auto lp = solve_lp(A, b, c);
  if (lp.status != LpStatus::optimal)
    raise(errc::solver_failure, "transport curvature LP failed");

  CurvatureReport rep;
  rep.method = CurvatureMethod::transport_lp;
  rep.kappa = lp.objective;
  rep.stats.pivots = lp.pivots;
  Coupling rho;
  rho.rows = bx;
  rho.cols = by;
  rho.mass = lp.x;
  rep.witness_coupling = std::move(rho);
  return rep;
}

namespace {

struct CombinatorialSets {
  std::vector<Vertex> common, only_x, only_y;
};

CombinatorialSets split_balls(const WeightedGraph& g, Vertex x0, Vertex y0) {
  auto bx = g.ball1(x0);
  auto by = g.ball1(y0);
  CombinatorialSets s;
  std::set_intersection(bx.begin(), bx.end(), by.begin(), by.end(),
                        std::back_inserter(s.common));
  std::set_difference(bx.begin(), bx.end(), by.begin(), by.end(),
                      std::back_inserter(s.only_x));
  std::set_difference(by.begin(), by.end(), bx.begin(), bx.end(),
                      std::back_inserter(s.only_y));
  return s;
}

// Assignment cost of matching the exclusive neighbor sets, where leaving a
// vertex unmatched costs 1 and matching costs d(x, phi(x)) - 1; entries of
// `fixed` pin only_x[i] to only_y[fixed[i]] (-2 = free, -1 = unmatched).
double exclusive_match_cost(const std::vector<std::vector<int>>& d, int na,
                            int nb, const std::vector<int>& fixed) {
  std::vector<int> rows, cols_taken;
  double base = 0.0;
  for (int i = 0; i < na; ++i) {
    if (fixed[i] == -2) {
      rows.push_back(i);
    } else if (fixed[i] == -1) {
      base += 1.0;
    } else {
      base += d[i][fixed[i]] - 1.0;
      cols_taken.push_back(fixed[i]);
    }
  }
  std::vector<int> cols;
  for (int j = 0; j < nb; ++j)
    if (std::find(cols_taken.begin(), cols_taken.end(), j) == cols_taken.end())
      cols.push_back(j);
  int ra = static_cast<int>(rows.size());
  int rb = static_cast<int>(cols.size());
  int s = ra + rb;
  if (s == 0) return base;
  std::vector<std::vector<double>> cost(s, std::vector<double>(s, 0.0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i < ra && j < rb)
        cost[i][j] = d[rows[i]][cols[j]] - 1.0;
      else if (i >= ra && j >= rb)
        cost[i][j] = 0.0;
      else
        cost[i][j] = 1.0;  // row or column left unmatched
    }
  return base + solve_assignment(cost).cost;
}

}  // namespace

CurvatureReport ollivier_combinatorial(const WeightedGraph& g, Vertex x0, Vertex y0) {
  check_distinct(x0, y0);
  if (!g.is_combinatorial())
    raise(errc::not_combinatorial, "needs weights in {0,1} and m == 1");
  if (!g.adjacent(x0, y0)) raise(errc::not_adjacent, "needs x0 ~ y0");

  auto sets = split_balls(g, x0, y0);
  int na = static_cast<int>(sets.only_x.size());
  int nb = static_cast<int>(sets.only_y.size());
  std::vector<std::vector<int>> d(na, std::vector<int>(nb));
  for (int i = 0; i < na; ++i) {
    auto dd = g.distances(sets.only_x[i]);
    for (int j = 0; j < nb; ++j) d[i][j] = dd[sets.only_y[j]];
  }

  std::vector<int> fixed(na, -2);
  int solves = 1;
  double opt = exclusive_match_cost(d, na, nb, fixed);

  // Lexicographically smallest optimal matching: fix partners greedily in
  // ascending vertex order, trying real partners before "unmatched".
  for (int i = 0; i < na; ++i) {
    bool placed = false;
    for (int j = 0; j < nb && !placed; ++j) {
      if (std::find(fixed.begin(), fixed.end(), j) != fixed.end()) continue;
      fixed[i] = j;
      ++solves;
      if (exclusive_match_cost(d, na, nb, fixed) <= opt + 0.25) placed = true;
    }
    if (!placed) fixed[i] = -1;  // unmatched is always completable optimally
  }

  CurvatureReport rep;
  rep.method = CurvatureMethod::combinatorial;
  rep.stats.iterations = solves;
  rep.kappa = std::llround(static_cast<double>(sets.common.size()) - opt);

  // Witness transport function from the matching, as in the reduction:
  // identity on the common ball, phi on matched, x0/y0 rows absorb the rest.
  auto bx = g.ball1(x0);
  auto by = g.ball1(y0);
  Coupling rho;
  rho.rows = bx;
  rho.cols = by;
  rho.mass.assign(bx.size() * by.size(), 0.0);
  auto row_of = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(bx.begin(), bx.end(), v) - bx.begin());
  };
  auto col_of = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(by.begin(), by.end(), v) - by.begin());
  };
  for (Vertex z : sets.common) rho.at(row_of(z), col_of(z)) = 1.0;
  for (int i = 0; i < na; ++i) {
    if (fixed[i] >= 0)
      rho.at(row_of(sets.only_x[i]), col_of(sets.only_y[fixed[i]])) = 1.0;
    else
      rho.at(row_of(sets.only_x[i]), col_of(y0)) = 1.0;
  }
  for (int j = 0; j < nb; ++j)
    if (std::find(fixed.begin(), fixed.end(), j) == fixed.end())
      rho.at(row_of(x0), col_of(sets.only_y[j])) = 1.0;
  rep.witness_coupling = std::move(rho);
  return rep;
}

CurvatureReport ollivier_bruteforce(const WeightedGraph& g, Vertex x0, Vertex y0,
                                    int max_ball) {
  check_distinct(x0, y0);
  if (!g.is_combinatorial())
    raise(errc::not_combinatorial, "needs weights in {0,1} and m == 1");
  auto ball = g.ball1_union(x0, y0);
  int k = static_cast<int>(ball.size());
  if (k > max_ball)
    raise(errc::too_large, "ball union has " + std::to_string(k) +
                               " vertices, cap " + std::to_string(max_ball));

  std::vector<std::vector<int>> dist(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i) {
    auto d = g.distances(ball[i]);
    for (int j = 0; j < k; ++j) dist[i][j] = d[ball[j]];
  }
  auto pos = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(ball.begin(), ball.end(), v) -
                            ball.begin());
  };
  int ix = pos(x0), iy = pos(y0);
  int d0 = dist[ix][iy];
  int range = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) range = std::max(range, dist[i][j]);

  // Integer objective coefficients: obj * d0 = sum C_v f(v).
  std::vector<long> coef(k, 0);
  for (auto [z, w] : g.neighbors(x0)) coef[pos(z)] += 1;
  for (auto [z, w] : g.neighbors(y0)) coef[pos(z)] -= 1;
  coef[ix] -= static_cast<long>(g.neighbors(x0).size());
  coef[iy] += static_cast<long>(g.neighbors(y0).size());

  // Assignment order: pinned first, the rest by distance to the pair.
  std::vector<int> order{ix, iy};
  {
    std::vector<int> rest;
    for (int i = 0; i < k; ++i)
      if (i != ix && i != iy) rest.push_back(i);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
      int ka = std::min(dist[a][ix], dist[a][iy]);
      int kb = std::min(dist[b][ix], dist[b][iy]);
      return std::tie(ka, a) < std::tie(kb, b);
    });
    order.insert(order.end(), rest.begin(), rest.end());
  }

  std::vector<int> value(k, 0);
  std::vector<char> assigned(k, 0);
  value[ix] = 0;
  value[iy] = d0;
  assigned[ix] = assigned[iy] = 1;

  // Warm start with f = d(x0, .).
  long best = 0;
  std::vector<int> best_f(k);
  for (int i = 0; i < k; ++i) best_f[i] = dist[ix][i];
  for (int i = 0; i < k; ++i) best += coef[i] * best_f[i];

  long nodes = 0;
  std::vector<int> cur(k, 0);
  cur[ix] = 0;
  cur[iy] = d0;

  // Interval of admissible values for vertex i against assigned vertices.
  auto interval = [&](int i, int& lo, int& hi) {
    lo = -range;
    hi = range;
    for (int j = 0; j < k; ++j)
      if (assigned[j]) {
        lo = std::max(lo, cur[j] - dist[i][j]);
        hi = std::min(hi, cur[j] + dist[i][j]);
      }
  };

  auto optimistic = [&](int next_pos) {
    long bound = 0;
    for (int t = 0; t < k; ++t)
      if (assigned[t]) bound += coef[t] * static_cast<long>(cur[t]);
    for (int t = next_pos; t < k; ++t) {
      int i = order[t];
      int lo, hi;
      interval(i, lo, hi);
      if (lo > hi) return std::numeric_limits<long>::max();
      bound += coef[i] >= 0 ? coef[i] * static_cast<long>(lo)
                            : coef[i] * static_cast<long>(hi);
    }
    return bound;
  };

  std::function<void(int)> dfs = [&](int next_pos) {
    ++nodes;
    if (next_pos == k) {
      long obj = 0;
      for (int t = 0; t < k; ++t) obj += coef[t] * static_cast<long>(cur[t]);
      if (obj < best) {
        best = obj;
        for (int t = 0; t < k; ++t) best_f[t] = cur[t];
      }
      return;
    }
    if (optimistic(next_pos) >= best) return;
    int i = order[next_pos];
    int lo, hi;
    interval(i, lo, hi);
    for (int v = lo; v <= hi; ++v) {
      cur[i] = v;
      assigned[i] = 1;
      dfs(next_pos + 1);
      assigned[i] = 0;
    }
  };
  dfs(2);

  CurvatureReport rep;
  rep.method = CurvatureMethod::bruteforce;
  rep.kappa = static_cast<double>(best) / d0;
  rep.stats.nodes = nodes;
  std::vector<std::pair<Vertex, double>> witness;
  for (int i = 0; i < k; ++i) witness.push_back({ball[i], double(best_f[i])});
  rep.witness_potential = std::move(witness);
  return rep;
}

EpsCurvature ollivier_eps(const WeightedGraph& g, Vertex x, Vertex y, double eps) {
  check_distinct(x, y);
  if (!(eps > 0.0)) raise(errc::invalid_argument, "eps must be positive");
  double cap = 1.0 / std::max(g.degree(x), g.degree(y));
  if (eps > cap + 1e-15)
    raise(errc::eps_too_large,
          "eps = " + std::to_string(eps) + " > 1/maxDeg = " + std::to_string(cap));
  auto mx = markov_kernel(g, x, eps);
  auto my = markov_kernel(g, y, eps);
  double d0 = g.distance(x, y);
  EpsCurvature out;
  out.eps = eps;
  out.kappa_eps = 1.0 - wasserstein(g, mx, my).value / d0;
  out.normalized = out.kappa_eps / eps;
  return out;
}

double no_cycle_formula(const WeightedGraph& g, Vertex x, Vertex y) {
  check_distinct(x, y);
  if (!g.adjacent(x, y)) raise(errc::not_adjacent, "needs x ~ y");
  std::set<Vertex> nx, ny;
  for (auto [z, w] : g.neighbors(x)) nx.insert(z);
  for (auto [z, w] : g.neighbors(y)) ny.insert(z);
  for (Vertex z : nx)
    if (z != y && ny.count(z))
      raise(errc::short_cycle_present, "edge lies in a 3-cycle");
  for (Vertex b : nx) {
    if (b == y) continue;
    for (Vertex a : ny) {
      if (a == x || a == b) continue;
      if (g.adjacent(a, b)) raise(errc::short_cycle_present, "edge lies in a 4-cycle");
      for (auto [c, w] : g.neighbors(a)) {
        if (c == x || c == y || c == b) continue;
        if (g.adjacent(c, b)) raise(errc::short_cycle_present, "edge lies in a 5-cycle");
      }
    }
  }
  return 2.0 * g.weight(x, y) * (1.0 / g.measure(x) + 1.0 / g.measure(y)) -
         g.degree(x) - g.degree(y);
}

double bdc_curvature(const BirthDeathChain& chain, int r, int R) {
  if (!(0 <= r && r < R))
    raise(errc::invalid_argument, "need 0 <= r < R");
  double lead = (chain.rate_up(r) - chain.rate_down(r)) / ((R - r) * chain.measure(r));
  double tail = (chain.rate_up(R) - chain.rate_down(R)) / ((R - r) * chain.measure(R));
  return lead - tail;
}

std::pair<double, double> bdc_average_identity(const BirthDeathChain& chain, int r) {
  if (r < 1) raise(errc::invalid_argument, "need r >= 1");
  double lhs = bdc_curvature(chain, 0, r);
  double acc = 0.0;
  for (int n = 0; n < r; ++n) acc += bdc_curvature(chain, n, n + 1);
  return {lhs, acc / r};
}

double sphere_curvature(const WeightedGraph& g, const SphereDecomposition& sd, int r) {
  if (r < 1 || r > sd.r_max())
    raise(errc::invalid_argument, "sphere radius out of range");
  double out = std::numeric_limits<double>::infinity();
  for (Vertex y : sd.spheres[r]) {
    double inner = -std::numeric_limits<double>::infinity();
    for (auto [x, w] : g.neighbors(y))
      if (sd.dist[x] == r - 1)
        inner = std::max(inner, ollivier_dual(g, x, y).kappa);
    out = std::min(out, inner);
  }
  return out;
}

double sphere_curvature(const WeightedGraph& g, Vertex x0, int r) {
  return sphere_curvature(g, sphere_decomposition(g, x0), r);
}

double ric_lower_bound(const WeightedGraph& g, unsigned workers) {
  const auto& edges = g.edges();
  std::vector<double> kappas(edges.size());
  parallel_for(edges.size(), workers, [&](std::size_t i) {
    kappas[i] = ollivier_dual(g, edges[i].u, edges[i].v).kappa;
  });
  double out = std::numeric_limits<double>::infinity();
  for (double k : kappas) out = std::min(out, k);
  return out;
}

IntrinsicCurvature intrinsic_curvature_bdc(const BirthDeathChain& chain, int r) {
  if (r < 0) raise(errc::invalid_argument, "need r >= 0");
  if (r > chain.radius() - 2)
    raise(errc::truncation_exceeded,
          "kappa_sigma(r, r+1) needs rates up to r+2 <= N");
  auto deg_plus = [&](int k) { return chain.rate_up(k) / chain.measure(k); };
  auto step = [&](int k) { return 1.0 / std::sqrt(deg_plus(k)); };

  IntrinsicCurvature out;
  for (int k = 0; k < r; ++k) out.sigma_to_root += step(k);

  auto lap_sigma = [&](int k) {
    double acc = chain.rate_up(k) * step(k);
    if (k > 0) acc -= chain.rate_down(k) * step(k - 1);
    return acc / chain.measure(k);
  };
  out.kappa_sigma = (lap_sigma(r) - lap_sigma(r + 1)) / step(r);

  for (int k = 0; k <= r + 1 && out.intrinsic_ok; ++k) {
    double acc = chain.rate_up(k) * step(k) * step(k);
    if (k > 0) acc += chain.rate_down(k) * step(k - 1) * step(k - 1);
    if (acc > 2.0 * chain.measure(k) * (1.0 + 1e-12)) out.intrinsic_ok = false;
  }
  return out;
}

}  // namespace curvelab

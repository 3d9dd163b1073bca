#include "curvelab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "curvelab/error.hpp"

namespace curvelab {

WeightedGraph make_path(int n) {
  if (n < 1) raise(errc::invalid_argument, "path needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return WeightedGraph(n, edges, std::vector<double>(n, 1.0));
}

WeightedGraph make_cycle(int n) {
  if (n < 3) raise(errc::invalid_argument, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return WeightedGraph(n, edges, std::vector<double>(n, 1.0));
}

WeightedGraph make_complete(int n) {
  if (n < 2) raise(errc::invalid_argument, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return WeightedGraph(n, edges, std::vector<double>(n, 1.0));
}

WeightedGraph make_star(int leaves) {
  if (leaves < 1) raise(errc::invalid_argument, "star needs >= 1 leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return WeightedGraph(leaves + 1, edges, std::vector<double>(leaves + 1, 1.0));
}

WeightedGraph make_hypercube(int dim) {
  if (dim < 1 || dim > 16) raise(errc::invalid_argument, "hypercube dim in [1,16]");
  int n = 1 << dim;
  std::vector<Edge> edges;
  for (int x = 0; x < n; ++x)
    for (int b = 0; b < dim; ++b) {
      int y = x ^ (1 << b);
      if (x < y) edges.push_back({x, y, 1.0});
    }
  return WeightedGraph(n, edges, std::vector<double>(n, 1.0));
}

WeightedGraph make_random(const RandomGraphOptions& opt, std::mt19937_64& rng) {
  if (opt.n < 1) raise(errc::invalid_argument, "random graph needs n >= 1");
  int n = opt.n;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> positive(0.5, 2.0);
  std::vector<int> deg(n, 0);
  auto capped = [&](int u, int v) {
    return opt.max_degree > 0 &&
           (deg[u] >= opt.max_degree || deg[v] >= opt.max_degree);
  };

  std::vector<std::pair<int, int>> tree;
  // Random spanning tree: attach each vertex to a uniformly random earlier one.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int tries = 0;
    int u = order[i];
    int v = order[pick(rng)];
    while (capped(u, v) && tries++ < 8 * n) v = order[pick(rng)];
    tree.push_back({std::min(u, v), std::max(u, v)});
    ++deg[u];
    ++deg[v];
  }
  std::sort(tree.begin(), tree.end());
  std::vector<std::pair<int, int>> chosen = tree;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (std::binary_search(tree.begin(), tree.end(), std::make_pair(u, v)))
        continue;
      if (unit(rng) < opt.edge_prob && !capped(u, v)) {
        chosen.push_back({u, v});
        ++deg[u];
        ++deg[v];
      }
    }
  std::sort(chosen.begin(), chosen.end());

  std::vector<Edge> edges;
  for (auto [u, v] : chosen)
    edges.push_back({u, v, opt.random_weights ? positive(rng) : 1.0});
  std::vector<double> m(n, 1.0);
  if (opt.random_measures)
    for (auto& x : m) x = positive(rng);
  return WeightedGraph(n, edges, m);
}

BirthDeathChain bdc_from_rates(std::vector<double> w_up, std::vector<double> m,
                               bool exact_end) {
  return BirthDeathChain(std::move(w_up), std::move(m), exact_end);
}

WeightedGraph make_two_sided_geometric(int N) {
  if (N < 1) raise(errc::invalid_argument, "two_sided_geometric needs N >= 1");
  int n = 2 * N + 1;
  std::vector<Edge> edges;
  std::vector<double> m(n);
  std::vector<std::string> labels(n);
  for (int z = -N; z <= N; ++z) {
    m[z + N] = std::ldexp(1.0, z);  // 2^z
    labels[z + N] = std::to_string(z);
    if (z < N) edges.push_back({z + N, z + N + 1, std::ldexp(1.0, z)});
  }
  return WeightedGraph(n, edges, m, labels);
}

BirthDeathChain make_g_epsilon(double eps, int N) {
  if (!(eps > 0.0)) raise(errc::invalid_argument, "g_epsilon needs eps > 0");
  if (N < 1) raise(errc::invalid_argument, "g_epsilon needs N >= 1");
  std::vector<double> w(N);
  double inner = 0.0;  // sum_{k<=r} (log k)^{1+eps}
  double acc = 0.0;    // sum_{r<=R} inner(r)
  for (int R = 0; R < N; ++R) {
    if (R >= 1) {
      inner += std::pow(std::log(static_cast<double>(R)), 1.0 + eps);
      acc += inner;
    }
    w[R] = 1.0 + acc;
  }
  return BirthDeathChain(w, std::vector<double>(N + 1, 1.0));
}

namespace {
// sum_{i>r} k_i for a summable positive sequence, accumulated until the
// increments fall below relative 1e-16.
double tail_sum(const std::function<double(int)>& k, int r) {
  double acc = 0.0;
  for (int i = r + 1; i < r + 1 + 1000000; ++i) {
    double term = k(i);
    if (!(term > 0.0))
      raise(errc::invalid_construction, "k_" + std::to_string(i) + " <= 0");
    acc += term;
    if (term <= 1e-16 * acc) return acc;
  }
  raise(errc::invalid_construction, "sequence k does not appear summable");
}
}  // namespace

BirthDeathChain make_finite_optimal(const std::function<double(int)>& k, int N) {
  if (N < 1) raise(errc::invalid_argument, "finite_optimal needs N >= 1");
  std::vector<double> m(N + 1), w(N);
  m[0] = 1.0;
  w[0] = 2.0 * tail_sum(k, 0);
  for (int r = 1; r <= N; ++r) {
    m[r] = w[r - 1] / k(r + 1);
    if (r < N) w[r] = 2.0 * m[r] * tail_sum(k, r);
  }
  return BirthDeathChain(w, m);
}

BirthDeathChain make_positive_curv_infinite(double K,
                                            const std::vector<double>& w_up,
                                            double m0) {
  if (!(K > 0.0)) raise(errc::invalid_argument, "needs K > 0");
  if (w_up.size() < 2)
    raise(errc::invalid_argument, "needs rates w(r,r+1) for r = 0..N");
  for (std::size_t r = 0; r + 1 < w_up.size(); ++r)
    if (!(w_up[r] > w_up[r + 1]))
      raise(errc::invalid_construction, "rates must be strictly decreasing");
  if (!(w_up.back() > 0.0))
    raise(errc::invalid_construction, "rates must be positive");
  if (!(m0 > w_up[0] / K))
    raise(errc::invalid_construction, "need m(0) > w(0,1)/K");
  // The last supplied rate only enters via m(N); the chain itself is the
  // truncation to radius N = size - 1.
  int N = static_cast<int>(w_up.size()) - 1;
  std::vector<double> m(N + 1);
  m[0] = m0;
  double deg0 = w_up[0] / m0;
  for (int r = 1; r <= N; ++r) {
    double denom = K * r - deg0;
    m[r] = (w_up[r - 1] - w_up[r]) / denom;
    if (!(m[r] > 0.0))
      raise(errc::invalid_construction, "m(" + std::to_string(r) + ") <= 0");
  }
  return BirthDeathChain({w_up.begin(), w_up.end() - 1}, m);
}

BirthDeathChain make_intrinsic_example(double eps, int N) {
  if (!(eps > 0.0)) raise(errc::invalid_argument, "needs eps > 0");
  if (N < 1) raise(errc::invalid_argument, "needs N >= 1");
  std::vector<double> m(N + 1), w(N);
  for (int r = 0; r <= N; ++r) m[r] = std::ldexp(1.0, r);
  for (int r = 1; r <= N; ++r) {
    double logf = r == 1 ? 1.0 : std::pow(std::log(static_cast<double>(r)), 1.0 + eps);
    w[r - 1] = logf * r * std::ldexp(1.0, r);
  }
  return BirthDeathChain(w, m);
}

}  // namespace curvelab

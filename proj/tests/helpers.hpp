#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "curvelab/error.hpp"
#include "curvelab/finite_measure.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/weighted_graph.hpp"

// Asserts that `expr` throws curvelab::Error with the given code.
#define CHECK_ERR(expr, expected_code)                    \
  do {                                                    \
    bool caught_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const curvelab::Error& e_) {                 \
      caught_ = true;                                     \
      CHECK(e_.code() == (expected_code));                \
    }                                                     \
    CHECK_MESSAGE(caught_, #expr " did not throw");       \
  } while (0)

namespace testutil {

inline curvelab::WeightedGraph random_graph(std::mt19937_64& rng, int n,
                                            double p = 0.2, int max_degree = 0,
                                            bool weighted = false,
                                            bool measured = false) {
  curvelab::RandomGraphOptions opt;
  opt.n = n;
  opt.edge_prob = p;
  opt.max_degree = max_degree;
  opt.random_weights = weighted;
  opt.random_measures = measured;
  return curvelab::make_random(opt, rng);
}

// Random probability measure supported on `k` distinct vertices.
inline curvelab::FiniteMeasure random_probability(std::mt19937_64& rng, int n,
                                                  int k) {
  std::vector<int> verts(n);
  for (int i = 0; i < n; ++i) verts[i] = i;
  std::shuffle(verts.begin(), verts.end(), rng);
  verts.resize(std::min(k, n));
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  std::vector<double> mass(verts.size());
  double total = 0.0;
  for (auto& m : mass) {
    m = unit(rng);
    total += m;
  }
  for (auto& m : mass) m /= total;
  return curvelab::FiniteMeasure(verts, mass);
}

// Independent Wasserstein oracle for small supports: the dual optimum over
// integer-valued 1-Lipschitz functions on the support union (integrality of
// the optimal potential holds because the hop metric is integral).
inline double bruteforce_wasserstein(const curvelab::WeightedGraph& g,
                                     const curvelab::FiniteMeasure& mu,
                                     const curvelab::FiniteMeasure& nu) {
  std::vector<int> u;
  std::set_union(mu.support().begin(), mu.support().end(), nu.support().begin(),
                 nu.support().end(), std::back_inserter(u));
  int k = static_cast<int>(u.size());
  std::vector<std::vector<int>> d(k, std::vector<int>(k));
  int dmax = 0;
  for (int i = 0; i < k; ++i) {
    auto di = g.distances(u[i]);
    for (int j = 0; j < k; ++j) {
      d[i][j] = di[u[j]];
      dmax = std::max(dmax, d[i][j]);
    }
  }
  std::vector<double> coef(k);
  for (int i = 0; i < k; ++i) coef[i] = mu(u[i]) - nu(u[i]);

  std::vector<int> f(k, 0);
  double best = -1.0;
  // f(u0) = 0 w.l.o.g.; values range over [-dmax, dmax].
  std::function<void(int)> rec = [&](int idx) {
    if (idx == k) {
      double val = 0.0;
      for (int i = 0; i < k; ++i) val += coef[i] * f[i];
      best = std::max(best, val);
      return;
    }
    int lo = idx == 0 ? 0 : -dmax;
    int hi = idx == 0 ? 0 : dmax;
    for (int v = lo; v <= hi; ++v) {
      bool ok = true;
      for (int j = 0; j < idx && ok; ++j)
        if (std::abs(v - f[j]) > d[idx][j]) ok = false;
      if (!ok) continue;
      f[idx] = v;
      rec(idx + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace testutil

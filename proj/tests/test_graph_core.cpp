#include <doctest.h>

#include <cmath>
#include <random>

#include "curvelab/error.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/weighted_graph.hpp"
#include "helpers.hpp"

using namespace curvelab;

TEST_CASE("construction invariants") {
  auto k2 = build_graph({{0, 1, 1.0}}, {1.0, 1.0});
  CHECK(k2.degree(0) == doctest::Approx(1.0));
  CHECK(k2.degree(1) == doctest::Approx(1.0));
  CHECK(k2.weight(0, 1) == k2.weight(1, 0));
  CHECK(k2.weight(0, 0) == 0.0);

  CHECK_ERR(build_graph({{0, 1, 1.0}, {2, 3, 1.0}}, {1, 1, 1, 1}),
            errc::disconnected_graph);
  CHECK_ERR(build_graph({{0, 1, -2.0}}, {1, 1}), errc::non_positive_weight);
  CHECK_ERR(build_graph({{0, 0, 1.0}}, {1}), errc::self_loop);
  CHECK_ERR(build_graph({{0, 1, 1.0}}, {1.0, 0.0}), errc::non_positive_measure);
  CHECK_ERR(build_graph({{0, 1, 1.0}, {1, 0, 2.0}}, {1, 1}),
            errc::invalid_construction);
}

TEST_CASE("degree with measures") {
  auto g = build_graph({{0, 1, 2.0}}, {1.0, 4.0});
  CHECK(g.degree(0) == doctest::Approx(2.0));
  CHECK(g.degree(1) == doctest::Approx(0.5));

  auto star = make_star(3);
  CHECK(star.degree(0) == doctest::Approx(3.0));
  CHECK(star.degree_max() == doctest::Approx(3.0));

  auto half = build_graph({{0, 1, 1.0}}, {2.0, 2.0});
  CHECK(half.degree(0) == doctest::Approx(0.5));
}

TEST_CASE("laplacian examples") {
  auto k2 = build_graph({{0, 1, 1.0}}, {1.0, 1.0});
  auto lap = k2.laplacian({0.0, 1.0});  // indicator of y
  CHECK(lap[0] == doctest::Approx(1.0));
  CHECK(lap[1] == doctest::Approx(-1.0));

  auto path = make_path(3);
  auto lap2 = path.laplacian({0.0, 1.0, 2.0});  // f = d(a, .)
  CHECK(lap2[0] == doctest::Approx(1.0));
  CHECK(lap2[1] == doctest::Approx(0.0));
  CHECK(lap2[2] == doctest::Approx(-1.0));

  std::mt19937_64 rng(7);
  auto g = testutil::random_graph(rng, 25, 0.2, 0, true, true);
  auto lc = g.laplacian(std::vector<double>(g.size(), 3.25));
  for (double v : lc) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mass conservation and scaling invariance") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = testutil::random_graph(rng, 20, 0.25, 0, true, true);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> f(g.size());
    for (auto& v : f) v = unit(rng);
    auto lap = g.laplacian(f);
    double total = 0.0, scale = 0.0;
    for (int x = 0; x < g.size(); ++x) {
      total += g.measure(x) * lap[x];
      scale += std::abs(g.measure(x) * lap[x]);
    }
    CHECK(std::abs(total) <= 1e-10 * std::max(1.0, scale));

    // Deg and Delta invariant under (w, m) -> (lambda w, lambda m).
    double lambda = 3.7;
    std::vector<Edge> scaled_edges;
    for (auto e : g.edges()) scaled_edges.push_back({e.u, e.v, lambda * e.w});
    std::vector<double> scaled_m;
    for (int x = 0; x < g.size(); ++x) scaled_m.push_back(lambda * g.measure(x));
    WeightedGraph h(g.size(), scaled_edges, scaled_m);
    auto lap_h = h.laplacian(f);
    for (int x = 0; x < g.size(); ++x) {
      CHECK(lap_h[x] == doctest::Approx(lap[x]).epsilon(1e-12));
      CHECK(h.degree(x) == doctest::Approx(g.degree(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("distances") {
  auto c5 = make_cycle(5);
  CHECK(c5.distance(0, 1) == 1);
  CHECK(c5.distance(0, 2) == 2);
  CHECK(c5.distance(0, 3) == 2);

  auto p5 = make_path(5);
  CHECK(p5.distance(0, 4) == 4);
  CHECK(p5.eccentricity(0) == 4);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    auto g = testutil::random_graph(rng, 60, 0.08);
    std::vector<std::vector<int>> d(g.size());
    for (int x = 0; x < g.size(); ++x) d[x] = g.distances(x);
    for (int x = 0; x < g.size(); ++x) {
      CHECK(d[x][x] == 0);
      for (int y = 0; y < g.size(); ++y) {
        CHECK(d[x][y] == d[y][x]);
        if (x != y) CHECK(d[x][y] > 0);
        for (int z = 0; z < g.size(); z += 7)
          CHECK(d[x][y] <= d[x][z] + d[z][y]);
      }
    }
  }
}

TEST_CASE("sphere decomposition") {
  auto star = make_star(3);
  auto sd = sphere_decomposition(star, 0);
  CHECK(sd.spheres.size() == 2);
  CHECK(sd.spheres[0] == std::vector<Vertex>{0});
  CHECK(sd.spheres[1].size() == 3);
  CHECK(sd.deg_plus[0] == doctest::Approx(3.0));
  CHECK(sd.deg_minus[1] == doctest::Approx(1.0));

  auto path = make_path(3);
  auto sp = sphere_decomposition(path, 0);
  CHECK(sp.deg_plus[1] == doctest::Approx(1.0));
  CHECK(sp.deg_minus[1] == doctest::Approx(1.0));

  // Delta d(x0,.)(x) = Deg_+(x) - Deg_-(x) away from the root.
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    auto g = testutil::random_graph(rng, 30, 0.15, 0, true, true);
    auto sdr = sphere_decomposition(g, 0);
    std::vector<double> f(sdr.dist.begin(), sdr.dist.end());
    auto lap = g.laplacian(f);
    for (int x = 1; x < g.size(); ++x)
      CHECK(lap[x] ==
            doctest::Approx(sdr.deg_plus[x] - sdr.deg_minus[x]).epsilon(1e-12));
    // Partition and degree-split consistency.
    for (int x = 0; x < g.size(); ++x) {
      double within = 0.0;
      for (auto [y, w] : g.neighbors(x))
        if (sdr.dist[y] == sdr.dist[x]) within += w;
      within /= g.measure(x);
      CHECK(sdr.deg_plus[x] + sdr.deg_minus[x] + within ==
            doctest::Approx(g.degree(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("birth-death chain basics") {
  BirthDeathChain chain({1.0, 1.0}, {1.0, 1.0, 1.0});
  auto g = chain.to_graph();
  CHECK(g.size() == 3);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 2) == 1.0);
  CHECK(g.weight(0, 2) == 0.0);

  CHECK(chain.rate_down(0) == 0.0);
  CHECK_ERR(chain.rate_up(2), errc::truncation_exceeded);
  BirthDeathChain exact({1.0, 1.0}, {1.0, 1.0, 1.0}, true);
  CHECK(exact.rate_up(2) == 0.0);

  CHECK_ERR(BirthDeathChain({0.0}, {1.0, 1.0}), errc::non_positive_weight);
  CHECK_ERR(BirthDeathChain({1.0}, {1.0, -1.0}), errc::non_positive_measure);
}

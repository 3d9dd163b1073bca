#include <doctest.h>

#include <cmath>
#include <random>

#include "curvelab/curvature.hpp"
#include "curvelab/error.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/lp_solver.hpp"
#include "helpers.hpp"

using namespace curvelab;

namespace {

void check_all_engines(const WeightedGraph& g, Vertex x, Vertex y, double expect) {
  CHECK(ollivier_dual(g, x, y).kappa == doctest::Approx(expect).epsilon(1e-8));
  CHECK(ollivier_transport(g, x, y).kappa == doctest::Approx(expect).epsilon(1e-8));
  if (g.is_combinatorial() && g.adjacent(x, y)) {
    CHECK(ollivier_combinatorial(g, x, y).kappa == doctest::Approx(expect));
    CHECK(ollivier_bruteforce(g, x, y).kappa == doctest::Approx(expect));
  }
}

void check_dual_witness(const WeightedGraph& g, Vertex x, Vertex y) {
  auto rep = ollivier_dual(g, x, y);
  REQUIRE(rep.witness_potential.has_value());
  const auto& f = *rep.witness_potential;
  double d0 = g.distance(x, y);
  double fx = 0, fy = 0;
  for (auto [v, val] : f) {
    if (v == x) fx = val;
    if (v == y) fy = val;
  }
  CHECK(fx == doctest::Approx(0.0));
  CHECK((fy - fx) / d0 == doctest::Approx(1.0).epsilon(1e-9));
  // 1-Lipschitz on the restricted set.
  for (auto [u, fu] : f) {
    auto du = g.distances(u);
    for (auto [v, fv] : f) CHECK(std::abs(fu - fv) <= du[v] + 1e-9);
  }
  // grad_xy Delta f reproduces kappa.
  std::vector<double> dense(g.size(), 0.0);
  std::vector<char> in_ball(g.size(), 0);
  for (auto [v, val] : f) {
    dense[v] = val;
    in_ball[v] = 1;
  }
  double lap_x = 0, lap_y = 0;
  for (auto [z, w] : g.neighbors(x)) lap_x += w * (dense[z] - dense[x]);
  for (auto [z, w] : g.neighbors(y)) lap_y += w * (dense[z] - dense[y]);
  lap_x /= g.measure(x);
  lap_y /= g.measure(y);
  CHECK((lap_x - lap_y) / d0 == doctest::Approx(rep.kappa).epsilon(1e-8));
}

void check_transport_witness(const WeightedGraph& g, Vertex x0, Vertex y0) {
  auto rep = ollivier_transport(g, x0, y0);
  REQUIRE(rep.witness_coupling.has_value());
  const auto& rho = *rep.witness_coupling;
  double d0 = g.distance(x0, y0);
  for (double m : rho.mass) CHECK(m >= -1e-12);
  for (std::size_t i = 0; i < rho.rows.size(); ++i) {
    if (rho.rows[i] == x0) continue;
    CHECK(std::abs(rho.row_sum(static_cast<int>(i)) -
                   g.weight(x0, rho.rows[i]) / g.measure(x0)) <= 1e-9);
  }
  for (std::size_t j = 0; j < rho.cols.size(); ++j) {
    if (rho.cols[j] == y0) continue;
    CHECK(std::abs(rho.col_sum(static_cast<int>(j)) -
                   g.weight(y0, rho.cols[j]) / g.measure(y0)) <= 1e-9);
  }
  double objective = 0.0;
  for (std::size_t i = 0; i < rho.rows.size(); ++i) {
    auto d = g.distances(rho.rows[i]);
    for (std::size_t j = 0; j < rho.cols.size(); ++j)
      objective += rho.at(static_cast<int>(i), static_cast<int>(j)) *
                   (1.0 - d[rho.cols[j]] / d0);
  }
  CHECK(objective == doctest::Approx(rep.kappa).epsilon(1e-8));
}

}  // namespace

TEST_CASE("paper values on small graphs") {
  auto k2 = make_path(2);
  check_all_engines(k2, 0, 1, 2.0);

  auto p3 = make_path(3);
  check_all_engines(p3, 0, 1, 1.0);

  auto k3 = make_complete(3);
  check_all_engines(k3, 0, 1, 3.0);

  auto c4 = make_cycle(4);
  check_all_engines(c4, 0, 1, 2.0);

  auto c5 = make_cycle(5);
  check_all_engines(c5, 0, 1, 1.0);

  auto star = make_star(3);
  check_all_engines(star, 0, 1, 0.0);

  auto q3 = make_hypercube(3);
  double q3_dual = ollivier_dual(q3, 0, 1).kappa;
  CHECK(ollivier_combinatorial(q3, 0, 1).kappa == doctest::Approx(q3_dual).epsilon(1e-8));
  CHECK(ollivier_bruteforce(q3, 0, 1).kappa == doctest::Approx(q3_dual).epsilon(1e-8));
}

TEST_CASE("witness validity") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = testutil::random_graph(rng, 18, 0.2, 5, true, true);
    auto e = g.edges()[rep % g.edges().size()];
    check_dual_witness(g, e.u, e.v);
    check_transport_witness(g, e.u, e.v);
  }
}

TEST_CASE("engine agreement on random combinatorial graphs") {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = testutil::random_graph(rng, 20, 0.15, 5);
    for (std::size_t ei = 0; ei < g.edges().size(); ei += 3) {
      auto e = g.edges()[ei];
      double dual = ollivier_dual(g, e.u, e.v).kappa;
      double trans = ollivier_transport(g, e.u, e.v).kappa;
      double comb = ollivier_combinatorial(g, e.u, e.v).kappa;
      double brute = ollivier_bruteforce(g, e.u, e.v).kappa;
      CHECK(std::abs(dual - trans) <= 1e-7);
      CHECK(std::abs(dual - comb) <= 1e-7);
      CHECK(comb == brute);  // both exact integers
      CHECK(std::abs(dual - std::round(dual)) <= 1e-7);  // integrality
    }
  }
}

TEST_CASE("non-adjacent pairs") {
  auto p4 = make_path(4);
  double dual = ollivier_dual(p4, 0, 3).kappa;
  double trans = ollivier_transport(p4, 0, 3).kappa;
  CHECK(dual == doctest::Approx(trans).epsilon(1e-8));
  // kappa(0,3) = mean of the step curvatures on a chain: (1 + 0 + 1)/3.
  CHECK(dual == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK_ERR(ollivier_combinatorial(p4, 0, 3), errc::not_adjacent);
}

TEST_CASE("combinatorial engine preconditions") {
  auto weighted = build_graph({{0, 1, 2.0}}, {1.0, 1.0});
  CHECK_ERR(ollivier_combinatorial(weighted, 0, 1), errc::not_combinatorial);
  CHECK_ERR(ollivier_bruteforce(weighted, 0, 1), errc::not_combinatorial);
  auto big = make_hypercube(5);  // ball union has 2 + 2*4 = 10 <= 20, so force a cap
  CHECK_ERR(ollivier_bruteforce(big, 0, 1, 4), errc::too_large);
}

TEST_CASE("locality") {
  auto c12 = make_cycle(12);
  double before = ollivier_dual(c12, 0, 1).kappa;
  std::vector<Edge> edges = c12.edges();
  for (auto& e : edges)
    if (e.u == 6 && e.v == 7) e.w = 5.0;  // far from B_1(0) u B_1(1)
  WeightedGraph perturbed(12, edges, std::vector<double>(12, 1.0));
  double after = ollivier_dual(perturbed, 0, 1).kappa;
  CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("scaling invariance") {
  std::mt19937_64 rng(71);
  auto g = testutil::random_graph(rng, 15, 0.25, 0, true, true);
  auto e = g.edges()[2];
  double base = ollivier_dual(g, e.u, e.v).kappa;
  double lambda = 2.5;
  std::vector<Edge> edges;
  for (auto ed : g.edges()) edges.push_back({ed.u, ed.v, lambda * ed.w});
  std::vector<double> m;
  for (int x = 0; x < g.size(); ++x) m.push_back(lambda * g.measure(x));
  WeightedGraph h(g.size(), edges, m);
  CHECK(ollivier_dual(h, e.u, e.v).kappa == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("epsilon curvature") {
  auto k2 = make_path(2);
  auto eps = ollivier_eps(k2, 0, 1, 0.25);
  CHECK(eps.kappa_eps == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(eps.normalized == doctest::Approx(2.0).epsilon(1e-10));
  CHECK_ERR(ollivier_eps(k2, 0, 1, 2.0), errc::eps_too_large);

  // normalized values nondecreasing as eps halves, bounded above by kappa.
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 5; ++rep) {
    auto g = testutil::random_graph(rng, 12, 0.25, 4);
    auto e = g.edges()[0];
    double kappa = ollivier_dual(g, e.u, e.v).kappa;
    double eps0 = 0.1 / g.degree_max();
    double prev = -1e18;
    for (int k = 0; k < 8; ++k) {
      auto cur = ollivier_eps(g, e.u, e.v, eps0 * std::pow(0.5, k));
      CHECK(cur.normalized >= prev - 1e-9);
      CHECK(cur.normalized <= kappa + 1e-8);
      prev = cur.normalized;
    }
    CHECK(prev == doctest::Approx(kappa).epsilon(1e-6));
  }
}

TEST_CASE("no-cycle closed form") {
  auto p3 = make_path(3);
  CHECK(no_cycle_formula(p3, 0, 1) == doctest::Approx(1.0));
  CHECK(no_cycle_formula(p3, 0, 1) ==
        doctest::Approx(ollivier_dual(p3, 0, 1).kappa).epsilon(1e-8));

  auto k2w = build_graph({{0, 1, 3.0}}, {1.0, 2.0});
  CHECK(no_cycle_formula(k2w, 0, 1) == doctest::Approx(4.5));
  CHECK(no_cycle_formula(k2w, 0, 1) ==
        doctest::Approx(ollivier_dual(k2w, 0, 1).kappa).epsilon(1e-8));

  CHECK_ERR(no_cycle_formula(make_complete(3), 0, 1), errc::short_cycle_present);
  CHECK_ERR(no_cycle_formula(make_cycle(4), 0, 1), errc::short_cycle_present);
  CHECK_ERR(no_cycle_formula(make_cycle(5), 0, 1), errc::short_cycle_present);
  // 6-cycles are fine.
  CHECK(no_cycle_formula(make_cycle(6), 0, 1) == doctest::Approx(0.0));
  CHECK_ERR(no_cycle_formula(make_path(3), 0, 2), errc::not_adjacent);

  // Random trees never contain cycles; formula matches the LP everywhere.
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = testutil::random_graph(rng, 15, 0.0, 0, true, true);  // spanning tree
    for (auto e : g.edges()) {
      CHECK(no_cycle_formula(g, e.u, e.v) ==
            doctest::Approx(ollivier_dual(g, e.u, e.v).kappa).epsilon(1e-8));
    }
  }
}

TEST_CASE("birth-death closed form") {
  BirthDeathChain half({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1});
  CHECK(bdc_curvature(half, 0, 1) == doctest::Approx(1.0));
  CHECK(bdc_curvature(half, 1, 2) == doctest::Approx(0.0));
  CHECK_ERR(bdc_curvature(half, 4, 5), errc::truncation_exceeded);
  CHECK_ERR(bdc_curvature(half, 3, 3), errc::invalid_argument);

  // Closed form matches the dual LP on random chains (interior pairs).
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> w(10), m(11);
    for (auto& x : w) x = unit(rng);
    for (auto& x : m) x = unit(rng);
    BirthDeathChain chain(w, m);
    auto g = chain.to_graph();
    for (int r = 0; r < 8; ++r) {
      double lp = ollivier_dual(g, r, r + 1).kappa;
      CHECK(bdc_curvature(chain, r, r + 1) == doctest::Approx(lp).epsilon(1e-8));
    }
    // Non-neighbor pair.
    double lp = ollivier_dual(g, 2, 6).kappa;
    CHECK(bdc_curvature(chain, 2, 6) == doctest::Approx(lp).epsilon(1e-8));
  }

  // Two-sided geometric chain: zero curvature away from the root.
  auto g2 = make_two_sided_geometric(6);
  auto at = [&](int z) { return z + 6; };
  for (int r = 1; r <= 4; ++r)
    CHECK(ollivier_dual(g2, at(r), at(r + 1)).kappa ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("averaging identity") {
  BirthDeathChain half({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1});
  auto [lhs, rhs] = bdc_average_identity(half, 2);
  CHECK(lhs == doctest::Approx(0.5));
  CHECK(rhs == doctest::Approx(0.5));
  CHECK(std::abs(lhs - rhs) <= 1e-10);

  auto [l1, r1] = bdc_average_identity(half, 1);
  CHECK(l1 == doctest::Approx(r1));

  auto geps = make_g_epsilon(1.0, 10);
  auto [lg, rg] = bdc_average_identity(geps, 5);
  CHECK(std::abs(lg - rg) <= 1e-10);
}

TEST_CASE("sphere curvature") {
  auto star = make_star(3);
  CHECK(sphere_curvature(star, 0, 1) == doctest::Approx(0.0).epsilon(1e-9));

  auto p3 = make_path(3);
  CHECK(sphere_curvature(p3, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sphere_curvature(p3, 0, 2) == doctest::Approx(1.0).epsilon(1e-9));

  // g_epsilon: kappa(r) = -(log r)^{1+eps} for r >= 2, via the closed form
  // and via the LP on the path graph.
  auto chain = make_g_epsilon(1.0, 12);
  auto g = chain.to_graph();
  for (int r = 2; r <= 9; ++r) {
    double expect = -std::pow(std::log(double(r)), 2.0);
    CHECK(bdc_curvature(chain, r - 1, r) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(sphere_curvature(g, 0, r) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("ric lower bound") {
  CHECK(ric_lower_bound(make_cycle(4)) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(ric_lower_bound(make_path(2)) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(ric_lower_bound(make_path(4)) == doctest::Approx(0.0).epsilon(1e-8));
  // Parallel sweep gives the same answer.
  auto q3 = make_hypercube(3);
  CHECK(ric_lower_bound(q3, 4) == doctest::Approx(ric_lower_bound(q3, 1)));
}

TEST_CASE("intrinsic curvature on chains") {
  BirthDeathChain unit({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1});
  for (int r = 0; r <= 3; ++r) {
    auto ic = intrinsic_curvature_bdc(unit, r);
    CHECK(ic.sigma_to_root == doctest::Approx(double(r)));
  }
  CHECK_ERR(intrinsic_curvature_bdc(unit, 4), errc::truncation_exceeded);

  auto chain = make_intrinsic_example(1.0, 40);
  for (int r = 3; r <= 30; ++r) {
    auto ic = intrinsic_curvature_bdc(chain, r);
    CHECK(ic.intrinsic_ok);  // m nondecreasing
    CHECK(ic.kappa_sigma < 0.0);
  }
}

namespace {

// Exhaustive enumeration of partial injections between the exclusive
// neighbor sets; the independent oracle for the assignment reduction.
double enumerate_match_cost(const std::vector<std::vector<int>>& d, int na,
                            int nb) {
  double best = 1e18;
  std::vector<int> taken(nb, 0);
  std::function<void(int, double, int)> rec = [&](int i, double acc, int unmatched_a) {
    if (i == na) {
      int matched = i - unmatched_a;
      best = std::min(best, acc + unmatched_a + (nb - matched));
      return;
    }
    rec(i + 1, acc, unmatched_a + 1);  // leave only_x[i] unmatched
    for (int j = 0; j < nb; ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      rec(i + 1, acc + d[i][j] - 1.0, unmatched_a);
      taken[j] = 0;
    }
  };
  rec(0, 0.0, 0);
  return best;
}

double enumeration_kappa(const WeightedGraph& g, Vertex x0, Vertex y0) {
  auto bx = g.ball1(x0);
  auto by = g.ball1(y0);
  std::vector<Vertex> common, only_x, only_y;
  std::set_intersection(bx.begin(), bx.end(), by.begin(), by.end(),
                        std::back_inserter(common));
  std::set_difference(bx.begin(), bx.end(), by.begin(), by.end(),
                      std::back_inserter(only_x));
  std::set_difference(by.begin(), by.end(), bx.begin(), bx.end(),
                      std::back_inserter(only_y));
  int na = static_cast<int>(only_x.size());
  int nb = static_cast<int>(only_y.size());
  std::vector<std::vector<int>> d(na, std::vector<int>(nb));
  for (int i = 0; i < na; ++i) {
    auto dd = g.distances(only_x[i]);
    for (int j = 0; j < nb; ++j) d[i][j] = dd[only_y[j]];
  }
  return static_cast<double>(common.size()) - enumerate_match_cost(d, na, nb);
}

}  // namespace

TEST_CASE("assignment reduction matches exhaustive enumeration") {
  std::mt19937_64 rng(179);
  int checked = 0;
  while (checked < 40) {
    auto g = testutil::random_graph(rng, 16, 0.2, 5);
    for (const auto& e : g.edges()) {
      auto bx = g.ball1(e.u);
      auto by = g.ball1(e.v);
      std::vector<Vertex> ox, oy;
      std::set_difference(bx.begin(), bx.end(), by.begin(), by.end(),
                          std::back_inserter(ox));
      std::set_difference(by.begin(), by.end(), bx.begin(), bx.end(),
                          std::back_inserter(oy));
      if (ox.size() > 8 || oy.size() > 8) continue;
      CHECK(ollivier_combinatorial(g, e.u, e.v).kappa ==
            doctest::Approx(enumeration_kappa(g, e.u, e.v)));
      ++checked;
    }
  }
}

TEST_CASE("ball-restricted dual LP equals the whole-graph LP") {
  // Lipschitz constraints over all of V with the same pinning; the ball
  // restriction must not change the optimum.
  std::mt19937_64 rng(181);
  for (int rep = 0; rep < 6; ++rep) {
    auto g = testutil::random_graph(rng, 10, 0.25, 0, rep % 2 == 1, rep % 2 == 1);
    auto e = g.edges()[rep % g.edges().size()];
    int n = g.size();
    std::vector<std::vector<int>> dist(n);
    for (int v = 0; v < n; ++v) dist[v] = g.distances(v);
    double d0 = dist[e.u][e.v];
    double shift = 0.0;
    for (int v = 0; v < n; ++v) shift = std::max(shift, double(dist[e.u][v]));

    // Variables: g_v = f(v) + shift for v not pinned.
    std::vector<int> var(n, -1);
    int nvar = 0;
    for (int v = 0; v < n; ++v)
      if (v != e.u && v != e.v) var[v] = nvar++;
    auto pinned_value = [&](int v) { return v == e.u ? 0.0 : d0; };
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (var[u] < 0 && var[v] < 0) continue;
        double d = dist[u][v];
        if (var[u] >= 0 && var[v] >= 0) {
          std::vector<double> fwd(nvar, 0.0), rev(nvar, 0.0);
          fwd[var[u]] = 1.0;
          fwd[var[v]] = -1.0;
          rev[var[v]] = 1.0;
          rev[var[u]] = -1.0;
          A.push_back(fwd);
          b.push_back(d);
          A.push_back(rev);
          b.push_back(d);
        } else {
          int fr = var[u] >= 0 ? u : v;
          int pin = var[u] >= 0 ? v : u;
          std::vector<double> up(nvar, 0.0), down(nvar, 0.0);
          up[var[fr]] = 1.0;
          down[var[fr]] = -1.0;
          A.push_back(up);
          b.push_back(d + pinned_value(pin) + shift);
          A.push_back(down);
          b.push_back(d - pinned_value(pin) - shift);
        }
      }
    std::vector<double> c(nvar, 0.0);
    for (auto [z, w] : g.neighbors(e.u))
      if (var[z] >= 0) c[var[z]] -= w / g.measure(e.u);
    for (auto [z, w] : g.neighbors(e.v))
      if (var[z] >= 0) c[var[z]] += w / g.measure(e.v);
    auto lp = curvelab::solve_lp(A, b, c);
    REQUIRE(lp.status == curvelab::LpStatus::optimal);
    std::vector<double> f(n);
    f[e.u] = 0.0;
    f[e.v] = d0;
    for (int v = 0; v < n; ++v)
      if (var[v] >= 0) f[v] = lp.x[var[v]] - shift;
    double whole = (g.laplacian_at(f, e.u) - g.laplacian_at(f, e.v)) / d0;
    CHECK(ollivier_dual(g, e.u, e.v).kappa == doctest::Approx(whole).epsilon(1e-8));
  }
}

TEST_CASE("normalized-Laplacian graphs go through the general model") {
  // m(x) = combinatorial degree, w in {0,1}: Deg == 1 everywhere, so any
  // eps <= 1 is admissible and the engines agree as usual.
  std::mt19937_64 rng(191);
  for (int rep = 0; rep < 6; ++rep) {
    auto base = testutil::random_graph(rng, 14, 0.25);
    std::vector<double> m(base.size());
    for (int x = 0; x < base.size(); ++x)
      m[x] = static_cast<double>(base.neighbors(x).size());
    WeightedGraph g(base.size(), base.edges(), m);
    CHECK(g.degree_max() == doctest::Approx(1.0));
    auto e = g.edges()[rep % g.edges().size()];
    double dual = ollivier_dual(g, e.u, e.v).kappa;
    double trans = ollivier_transport(g, e.u, e.v).kappa;
    CHECK(dual == doctest::Approx(trans).epsilon(1e-8));
    auto eps = ollivier_eps(g, e.u, e.v, 1e-3);
    CHECK(eps.normalized == doctest::Approx(dual).epsilon(1e-6));
  }
}

#include "curvelab/weighted_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "curvelab/error.hpp"

namespace curvelab {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges,
                             std::vector<double> measures,
                             std::vector<std::string> labels)
    : n_(n), m_(std::move(measures)), labels_(std::move(labels)) {
  if (n_ <= 0) raise(errc::invalid_construction, "vertex count must be positive");
  if (static_cast<int>(m_.size()) != n_)
    raise(errc::dimension_mismatch, "measure vector size != vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    raise(errc::dimension_mismatch, "label vector size != vertex count");
  if (labels_.empty()) labels_.assign(n_, std::string());
  for (Vertex x = 0; x < n_; ++x)
    if (!(m_[x] > 0.0))
      raise(errc::non_positive_measure, "m(" + std::to_string(x) + ") <= 0");

  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      raise(errc::invalid_construction, "edge endpoint out of range");
    if (e.u == e.v) raise(errc::self_loop, "vertex " + std::to_string(e.u));
    if (!(e.w > 0.0))
      raise(errc::non_positive_weight, "w(" + std::to_string(e.u) + "," +
                                           std::to_string(e.v) + ") <= 0");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second)
      raise(errc::invalid_construction, "duplicate edge (" +
                                            std::to_string(e.u) + "," +
                                            std::to_string(e.v) + ")");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  edges_ = std::move(edges);

  adj_.assign(n_, {});
  weighted_deg_.assign(n_, 0.0);
  for (const auto& e : edges_) {
    adj_[e.u].push_back({e.v, e.w});
    adj_[e.v].push_back({e.u, e.w});
    weighted_deg_[e.u] += e.w;
    weighted_deg_[e.v] += e.w;
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  // Connectivity check.
  std::vector<char> visited(n_, 0);
  std::deque<Vertex> queue{0};
  visited[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (auto [y, w] : adj_[x])
      if (!visited[y]) {
        visited[y] = 1;
        ++count;
        queue.push_back(y);
      }
  }
  if (count != n_) raise(errc::disconnected_graph, "graph has multiple components");
}

Vertex WeightedGraph::find_label(const std::string& label) const {
  for (Vertex x = 0; x < n_; ++x)
    if (labels_[x] == label) return x;
  return -1;
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
  if (u == v) return 0.0;
  const auto& nb = adj_[u];
  auto it = std::lower_bound(nb.begin(), nb.end(), std::make_pair(v, 0.0));
  if (it != nb.end() && it->first == v) return it->second;
  return 0.0;
}

double WeightedGraph::degree(Vertex x) const { return weighted_deg_[x] / m_[x]; }

double WeightedGraph::degree_max() const {
  double best = 0.0;
  for (Vertex x = 0; x < n_; ++x) best = std::max(best, degree(x));
  return best;
}

double WeightedGraph::laplacian_at(const std::vector<double>& f, Vertex x) const {
  double acc = 0.0;
  for (auto [y, w] : adj_[x]) acc += w * (f[y] - f[x]);
  return acc / m_[x];
}

std::vector<double> WeightedGraph::laplacian(const std::vector<double>& f) const {
  if (static_cast<int>(f.size()) != n_)
    raise(errc::dimension_mismatch, "function size != vertex count");
  std::vector<double> out(n_);
  for (Vertex x = 0; x < n_; ++x) out[x] = laplacian_at(f, x);
  return out;
}

std::vector<int> WeightedGraph::distances(Vertex x) const {
  std::vector<int> dist(n_, -1);
  std::deque<Vertex> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (auto [v, w] : adj_[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

int WeightedGraph::distance(Vertex u, Vertex v) const { return distances(u)[v]; }

int WeightedGraph::eccentricity(Vertex x) const {
  auto d = distances(x);
  return *std::max_element(d.begin(), d.end());
}

bool WeightedGraph::is_combinatorial() const {
  for (const auto& e : edges_)
    if (e.w != 1.0) return false;
  for (double m : m_)
    if (m != 1.0) return false;
  return true;
}

std::vector<Vertex> WeightedGraph::ball1(Vertex x) const {
  std::vector<Vertex> out{x};
  for (auto [y, w] : adj_[x]) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> WeightedGraph::ball1_union(Vertex x, Vertex y) const {
  auto a = ball1(x);
  auto b = ball1(y);
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

WeightedGraph build_graph(const std::vector<Edge>& edges,
                          const std::vector<double>& measures, int n) {
  if (n < 0) {
    n = static_cast<int>(measures.size());
    if (n == 0)
      for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  }
  std::vector<double> m = measures;
  if (m.empty()) m.assign(n, 1.0);
  return WeightedGraph(n, edges, m);
}

SphereDecomposition sphere_decomposition(const WeightedGraph& g, Vertex root) {
  SphereDecomposition sd;
  sd.root = root;
  sd.dist = g.distances(root);
  int rmax = *std::max_element(sd.dist.begin(), sd.dist.end());
  sd.spheres.assign(rmax + 1, {});
  for (Vertex x = 0; x < g.size(); ++x) sd.spheres[sd.dist[x]].push_back(x);
  sd.deg_plus.assign(g.size(), 0.0);
  sd.deg_minus.assign(g.size(), 0.0);
  for (Vertex x = 0; x < g.size(); ++x) {
    for (auto [y, w] : g.neighbors(x)) {
      if (sd.dist[y] == sd.dist[x] + 1) sd.deg_plus[x] += w;
      if (sd.dist[y] == sd.dist[x] - 1) sd.deg_minus[x] += w;
    }
    sd.deg_plus[x] /= g.measure(x);
    sd.deg_minus[x] /= g.measure(x);
  }
  return sd;
}

}  // namespace curvelab

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace curvelab {

using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

/// Finite connected graph with symmetric edge weights w > 0 and vertex
/// measure m > 0. Immutable after construction; all operations are pure,
/// so instances can be shared freely between threads.
class WeightedGraph {
 public:
  /// Throws: SelfLoop, NonPositiveWeight, NonPositiveMeasure,
  /// DisconnectedGraph, InvalidConstruction (duplicate edge, bad sizes).
  WeightedGraph(int n, std::vector<Edge> edges, std::vector<double> measures,
                std::vector<std::string> labels = {});

  int size() const { return n_; }
  double measure(Vertex x) const { return m_[x]; }
  const std::vector<double>& measures() const { return m_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex x) const { return labels_[x]; }
  Vertex find_label(const std::string& label) const;  // -1 if absent

  /// Neighbors of x with their edge weights, ascending vertex order.
  const std::vector<std::pair<Vertex, double>>& neighbors(Vertex x) const {
    return adj_[x];
  }
  double weight(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return weight(u, v) > 0.0; }

  /// Edges with u < v, lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }

  double degree(Vertex x) const;  // Deg(x) = (1/m(x)) sum_y w(x,y)
  double degree_max() const;

  /// Delta f(x) = (1/m(x)) sum_y w(x,y) (f(y) - f(x))
  double laplacian_at(const std::vector<double>& f, Vertex x) const;
  std::vector<double> laplacian(const std::vector<double>& f) const;

  /// Hop-count distances from x via breadth-first search.
  std::vector<int> distances(Vertex x) const;
  int distance(Vertex u, Vertex v) const;
  int eccentricity(Vertex x) const;

  bool is_combinatorial() const;  // all weights 1, m == 1

  std::vector<Vertex> ball1(Vertex x) const;  // {x} together with N(x)
  std::vector<Vertex> ball1_union(Vertex x, Vertex y) const;  // sorted

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<double> m_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<Vertex, double>>> adj_;
  std::vector<double> weighted_deg_;  // sum_y w(x,y)
};

/// Convenience constructor used by tests and the CLI: vertex count inferred
/// from the edge list when n < 0.
WeightedGraph build_graph(const std::vector<Edge>& edges,
                          const std::vector<double>& measures, int n = -1);

struct SphereDecomposition {
  Vertex root;
  std::vector<std::vector<Vertex>> spheres;  // S_0, ..., S_Rmax
  std::vector<int> dist;
  std::vector<double> deg_plus;   // (1/m(x)) sum_{y in S_{r+1}} w(x,y)
  std::vector<double> deg_minus;  // (1/m(x)) sum_{y in S_{r-1}} w(x,y)
  int r_max() const { return static_cast<int>(spheres.size()) - 1; }
};

SphereDecomposition sphere_decomposition(const WeightedGraph& g, Vertex root);

}  // namespace curvelab

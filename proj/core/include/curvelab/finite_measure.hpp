#pragma once

#include <vector>

#include "curvelab/weighted_graph.hpp"

namespace curvelab {

/// Finitely supported nonnegative mass assignment on vertices.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  /// Support vertices need not be sorted; duplicates are rejected.
  FiniteMeasure(std::vector<Vertex> support, std::vector<double> mass);

  static FiniteMeasure dirac(Vertex x);
  static FiniteMeasure from_dense(const std::vector<double>& mass);

  const std::vector<Vertex>& support() const { return support_; }
  const std::vector<double>& masses() const { return mass_; }
  int support_size() const { return static_cast<int>(support_.size()); }

  double operator()(Vertex x) const;  // 0 off the support
  double total() const;
  bool is_probability() const;  // |total - 1| <= 1e-10

  std::vector<double> dense(int n) const;

 private:
  std::vector<Vertex> support_;  // ascending
  std::vector<double> mass_;     // aligned with support_
};

/// Joint mass matrix over two supports; row sums should match mu and column
/// sums nu (within 1e-9 absolute when produced by the transport solver).
struct Coupling {
  std::vector<Vertex> rows;
  std::vector<Vertex> cols;
  std::vector<double> mass;  // rows.size() * cols.size(), row-major

  double at(int i, int j) const { return mass[i * cols.size() + j]; }
  double& at(int i, int j) { return mass[i * cols.size() + j]; }
  double row_sum(int i) const;
  double col_sum(int j) const;
};

}  // namespace curvelab

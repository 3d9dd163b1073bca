#pragma once

#include <vector>

#include "curvelab/weighted_graph.hpp"

namespace curvelab {

/// Weighted path graph on {0, ..., N} given by upward rates w(r, r+1) and
/// vertex measures. A chain is either *exact* (it is the whole graph, so
/// w(N, N+1) = 0) or the truncation of an infinite chain, in which case
/// operations needing w(N, N+1) throw TruncationExceeded.
class BirthDeathChain {
 public:
  BirthDeathChain(std::vector<double> w_up, std::vector<double> m,
                  bool exact_end = false);

  int radius() const { return static_cast<int>(m_.size()) - 1; }  // N
  bool exact_end() const { return exact_end_; }

  double measure(int r) const;
  /// w(r, r+1); r == N gives 0 on an exact chain, throws on a truncation.
  double rate_up(int r) const;
  /// w(r, r-1), defined as 0 at r = 0.
  double rate_down(int r) const;
  double deg(int r) const { return (rate_up_safe(r) + rate_down(r)) / measure(r); }

  const std::vector<double>& rates_up() const { return w_up_; }
  const std::vector<double>& measures() const { return m_; }

  WeightedGraph to_graph() const;

 private:
  double rate_up_safe(int r) const { return r < radius() ? w_up_[r] : 0.0; }
  std::vector<double> w_up_;  // size N
  std::vector<double> m_;     // size N + 1
  bool exact_end_;
};

}  // namespace curvelab

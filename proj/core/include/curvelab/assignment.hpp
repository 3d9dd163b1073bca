#pragma once

#include <vector>

namespace curvelab {

struct AssignmentResult {
  double cost = 0.0;
  std::vector<int> row_to_col;  // size n, permutation
  int iterations = 0;
};

/// Min-cost perfect matching on a square cost matrix via shortest
/// augmenting paths with potentials, O(n^3). n == 0 gives cost 0.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace curvelab

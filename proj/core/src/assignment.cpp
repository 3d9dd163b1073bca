#include "curvelab/assignment.hpp"

#include <limits>

#include "curvelab/error.hpp"

namespace curvelab {

AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  AssignmentResult res;
  res.row_to_col.assign(n, -1);
  if (n == 0) return res;
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n)
      raise(errc::dimension_mismatch, "cost matrix must be square");

  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; col_owner[j] = row matched to column j, 0 = free.
  std::vector<double> pot_row(n + 1, 0.0), pot_col(n + 1, 0.0);
  std::vector<int> col_owner(n + 1, 0), prev_col(n + 1, 0);

  for (int r = 1; r <= n; ++r) {
    col_owner[0] = r;
    int j0 = 0;
    std::vector<double> min_reduced(n + 1, inf);
    std::vector<char> visited(n + 1, 0);
    do {
      visited[j0] = 1;
      int row = col_owner[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (visited[j]) continue;
        double reduced = cost[row - 1][j - 1] - pot_row[row] - pot_col[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          prev_col[j] = j0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (visited[j]) {
          pot_row[col_owner[j]] += delta;
          pot_col[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      j0 = j1;
      ++res.iterations;
    } while (col_owner[j0] != 0);
    do {
      int j1 = prev_col[j0];
      col_owner[j0] = col_owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  res.cost = 0.0;
  for (int j = 1; j <= n; ++j) {
    if (col_owner[j] > 0) res.row_to_col[col_owner[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) res.cost += cost[i][res.row_to_col[i]];
  return res;
}

}  // namespace curvelab

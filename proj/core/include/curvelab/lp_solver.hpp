#pragma once

#include <vector>

namespace curvelab {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

/// Dense two-phase simplex for  max c.x  s.t.  A x <= b,  x >= 0.
/// Entering/leaving ties are broken by lowest variable index (Bland's rule),
/// which also guarantees termination. b may have negative entries.
LpResult solve_lp(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b, const std::vector<double>& c,
                  double eps = 1e-9);

}  // namespace curvelab

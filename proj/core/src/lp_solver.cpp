#include "curvelab/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/error.hpp"

namespace curvelab {

namespace {

// Dictionary tableau. Columns 0..n-1 hold nonbasic variables, column n the
// phase-1 artificial, column n+1 the right-hand side. Rows 0..m-1 are
// constraints, row m the objective, row m+1 the phase-1 objective.
// Variable ids: 0..n-1 structural, n..n+m-1 slacks, -1 artificial.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
          const std::vector<double>& c, double eps)
      : m_(static_cast<int>(A.size())), n_(static_cast<int>(c.size())), eps_(eps),
        tab_(m_ + 2, std::vector<double>(n_ + 2, 0.0)), basic_(m_), nonbasic_(n_ + 1) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
      tab_[i][n_] = -1.0;
      tab_[i][n_ + 1] = b[i];
      basic_[i] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      tab_[m_][j] = -c[j];
      nonbasic_[j] = j;
    }
    nonbasic_[n_] = kArtificial;
    tab_[m_ + 1][n_] = 1.0;
  }

  LpResult run() {
    LpResult res;
    int worst = 0;
    for (int i = 1; i < m_; ++i)
      if (tab_[i][n_ + 1] < tab_[worst][n_ + 1]) worst = i;
    if (m_ > 0 && tab_[worst][n_ + 1] < -eps_) {
      pivot(worst, n_);
      if (!iterate(m_ + 1, res.pivots) || tab_[m_ + 1][n_ + 1] < -eps_) {
        res.status = LpStatus::infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i)
        if (basic_[i] == kArtificial) {
          int col = -1;
          for (int j = 0; j <= n_; ++j)
            if (nonbasic_[j] != kArtificial && std::abs(tab_[i][j]) > eps_) {
              col = j;
              break;
            }
          if (col >= 0) pivot(i, col);
        }
    }
    if (!iterate(m_, res.pivots)) {
      res.status = LpStatus::unbounded;
      return res;
    }
    res.objective = tab_[m_][n_ + 1];
    res.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < n_) res.x[basic_[i]] = tab_[i][n_ + 1];
    return res;
  }

 private:
  static constexpr int kArtificial = -1;
  static constexpr int kMaxPivots = 200000;

  void pivot(int r, int s) {
    double inv = 1.0 / tab_[r][s];
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r && std::abs(tab_[i][s]) > 1e-14) {
        double factor = tab_[i][s] * inv;
        for (int j = 0; j < n_ + 2; ++j) tab_[i][j] -= factor * tab_[r][j];
        tab_[i][s] = -factor;
      } else if (i != r) {
        tab_[i][s] = -tab_[i][s] * inv;
      }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) tab_[r][j] *= inv;
    tab_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule on objective row `orow`; false means unbounded.
  bool iterate(int orow, int& pivots) {
    for (;;) {
      int enter = -1;
      int enter_id = std::numeric_limits<int>::max();
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == kArtificial) continue;
        if (tab_[orow][j] < -eps_ && nonbasic_[j] < enter_id) {
          enter = j;
          enter_id = nonbasic_[j];
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= eps_) continue;
        double ratio = tab_[i][n_ + 1] / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio - eps_ ||
            (ratio < best_ratio + eps_ && basic_[i] < basic_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      if (++pivots > kMaxPivots)
        raise(errc::solver_failure, "simplex pivot limit exceeded");
    }
  }

  int m_, n_;
  double eps_;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basic_, nonbasic_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b, const std::vector<double>& c,
                  double eps) {
  if (A.size() != b.size()) raise(errc::dimension_mismatch, "A rows != b size");
  for (const auto& row : A)
    if (row.size() != c.size()) raise(errc::dimension_mismatch, "A cols != c size");
  if (c.empty()) {
    LpResult res;
    for (double bi : b)
      if (bi < -eps) {
        res.status = LpStatus::infeasible;
        return res;
      }
    return res;
  }
  return Simplex(A, b, c, eps).run();
}

}  // namespace curvelab

#include "curvelab/finite_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "curvelab/error.hpp"

namespace curvelab {

FiniteMeasure::FiniteMeasure(std::vector<Vertex> support, std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (support_.size() != mass_.size())
    raise(errc::dimension_mismatch, "support and mass sizes differ");
  std::vector<int> order(support_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return support_[a] < support_[b]; });
  std::vector<Vertex> s(support_.size());
  std::vector<double> m(mass_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    s[i] = support_[order[i]];
    m[i] = mass_[order[i]];
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == s[i + 1])
      raise(errc::invalid_construction,
            "duplicate support vertex " + std::to_string(s[i]));
  for (double x : m)
    if (x < 0.0) raise(errc::invalid_construction, "negative mass");
  support_ = std::move(s);
  mass_ = std::move(m);
}

FiniteMeasure FiniteMeasure::dirac(Vertex x) { return FiniteMeasure({x}, {1.0}); }

FiniteMeasure FiniteMeasure::from_dense(const std::vector<double>& mass) {
  std::vector<Vertex> support;
  std::vector<double> m;
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (mass[i] != 0.0) {
      support.push_back(static_cast<Vertex>(i));
      m.push_back(mass[i]);
    }
  return FiniteMeasure(std::move(support), std::move(m));
}

double FiniteMeasure::operator()(Vertex x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0.0;
  return mass_[it - support_.begin()];
}

double FiniteMeasure::total() const {
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

bool FiniteMeasure::is_probability() const {
  return std::abs(total() - 1.0) <= 1e-10;
}

std::vector<double> FiniteMeasure::dense(int n) const {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] < 0 || support_[i] >= n)
      raise(errc::dimension_mismatch, "support vertex out of range");
    out[support_[i]] = mass_[i];
  }
  return out;
}

double Coupling::row_sum(int i) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < cols.size(); ++j) acc += at(i, static_cast<int>(j));
  return acc;
}

double Coupling::col_sum(int j) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) acc += at(static_cast<int>(i), j);
  return acc;
}

}  // namespace curvelab

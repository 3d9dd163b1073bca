#include "curvelab/birth_death_chain.hpp"

#include <string>

#include "curvelab/error.hpp"

namespace curvelab {

BirthDeathChain::BirthDeathChain(std::vector<double> w_up, std::vector<double> m,
                                 bool exact_end)
    : w_up_(std::move(w_up)), m_(std::move(m)), exact_end_(exact_end) {
  if (m_.empty()) raise(errc::invalid_construction, "chain needs at least one vertex");
  if (w_up_.size() + 1 != m_.size())
    raise(errc::dimension_mismatch, "need exactly N rates for N+1 measures");
  for (std::size_t r = 0; r < w_up_.size(); ++r)
    if (!(w_up_[r] > 0.0))
      raise(errc::non_positive_weight, "w(" + std::to_string(r) + "," +
                                           std::to_string(r + 1) + ") <= 0");
  for (std::size_t r = 0; r < m_.size(); ++r)
    if (!(m_[r] > 0.0))
      raise(errc::non_positive_measure, "m(" + std::to_string(r) + ") <= 0");
}

double BirthDeathChain::measure(int r) const {
  if (r < 0 || r > radius())
    raise(errc::truncation_exceeded, "vertex " + std::to_string(r));
  return m_[r];
}

double BirthDeathChain::rate_up(int r) const {
  if (r < 0 || r > radius())
    raise(errc::truncation_exceeded, "rate index " + std::to_string(r));
  if (r == radius()) {
    if (exact_end_) return 0.0;
    raise(errc::truncation_exceeded,
          "w(" + std::to_string(r) + "," + std::to_string(r + 1) +
              ") lies beyond the truncation radius");
  }
  return w_up_[r];
}

double BirthDeathChain::rate_down(int r) const {
  if (r < 0 || r > radius())
    raise(errc::truncation_exceeded, "rate index " + std::to_string(r));
  return r == 0 ? 0.0 : w_up_[r - 1];
}

WeightedGraph BirthDeathChain::to_graph() const {
  std::vector<Edge> edges;
  for (int r = 0; r < radius(); ++r)
    edges.push_back({r, r + 1, w_up_[r]});
  return WeightedGraph(radius() + 1, edges, m_);
}

}  // namespace curvelab

#pragma once

#include <stdexcept>
#include <string>

namespace curvelab {

enum class errc {
  disconnected_graph,
  non_positive_weight,
  non_positive_measure,
  self_loop,
  invalid_construction,
  parse_error,
  format_version_mismatch,
  truncation_exceeded,
  not_probability,
  lp_infeasible,
  solver_failure,
  not_combinatorial,
  not_adjacent,
  too_large,
  eps_too_large,
  short_cycle_present,
  non_positive_curvature,
  curvature_precondition_failed,
  empty_subset,
  negative_time,
  negative_phi,
  eigen_failure,
  dimension_mismatch,
  invalid_argument,
};

const char* errc_name(errc c);

/// Single exception type for all domain errors; discriminate via code().
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg);
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& msg);

}  // namespace curvelab

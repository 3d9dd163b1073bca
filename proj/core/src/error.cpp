#include "curvelab/error.hpp"

namespace curvelab {

const char* errc_name(errc c) {
  switch (c) {
    case errc::disconnected_graph: return "DisconnectedGraph";
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::non_positive_measure: return "NonPositiveMeasure";
    case errc::self_loop: return "SelfLoop";
    case errc::invalid_construction: return "InvalidConstruction";
    case errc::parse_error: return "ParseError";
    case errc::format_version_mismatch: return "FormatVersionMismatch";
    case errc::truncation_exceeded: return "TruncationExceeded";
    case errc::not_probability: return "NotProbability";
    case errc::lp_infeasible: return "LpInfeasible";
    case errc::solver_failure: return "SolverFailure";
    case errc::not_combinatorial: return "NotCombinatorial";
    case errc::not_adjacent: return "NotAdjacent";
    case errc::too_large: return "TooLarge";
    case errc::eps_too_large: return "EpsTooLarge";
    case errc::short_cycle_present: return "ShortCyclePresent";
    case errc::non_positive_curvature: return "NonPositiveCurvature";
    case errc::curvature_precondition_failed: return "CurvaturePreconditionFailed";
    case errc::empty_subset: return "EmptySubset";
    case errc::negative_time: return "NegativeTime";
    case errc::negative_phi: return "NegativePhi";
    case errc::eigen_failure: return "EigenFailure";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void raise(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace curvelab

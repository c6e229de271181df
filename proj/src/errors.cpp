#include "conestab/errors.hpp"

namespace conestab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return "UsageError";
    case ErrorKind::non_smooth_point: return "NonSmoothPoint";
    case ErrorKind::degenerate_boundary: return "DegenerateBoundary";
    case ErrorKind::no_zero_found: return "NoZeroFound";
    case ErrorKind::out_of_domain: return "OutOfDomain";
    case ErrorKind::all_points_guarded: return "AllPointsGuarded";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::unstable_cone: return "UnstableCone";
    case ErrorKind::stable_cone: return "StableCone";
    case ErrorKind::margin_too_small: return "MarginTooSmall";
    case ErrorKind::identity_violated: return "IdentityViolated";
    case ErrorKind::consistency_violation: return "ConsistencyViolation";
  }
  return "Error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
      return 1;
    case ErrorKind::non_smooth_point:
    case ErrorKind::no_zero_found:
    case ErrorKind::out_of_domain:
    case ErrorKind::all_points_guarded:
    case ErrorKind::no_convergence:
    case ErrorKind::margin_too_small:
      return 2;
    case ErrorKind::degenerate_boundary:
    case ErrorKind::unstable_cone:
    case ErrorKind::stable_cone:
    case ErrorKind::identity_violated:
    case ErrorKind::consistency_violation:
      return 3;
  }
  return 2;
}

}  // namespace conestab

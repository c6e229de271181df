#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conestab {

enum class ErrorKind {
  usage,
  non_smooth_point,
  degenerate_boundary,
  no_zero_found,
  out_of_domain,
  all_points_guarded,
  no_convergence,
  unstable_cone,
  stable_cone,
  margin_too_small,
  identity_violated,
  consistency_violation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// that front ends can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// CLI exit status: 1 usage, 2 numerical failure, 3 invariant violation.
int exit_code(ErrorKind kind);

}  // namespace conestab

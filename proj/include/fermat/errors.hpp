#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

enum class ErrorCode {
  collinear_anchors,
  invalid_instance,
  nontriangular_weights,
  target_not_interior,
  degenerate_tetrahedron,
  candidate_at_anchor,
  internal_inconsistency,
  malformed_instance,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::collinear_anchors: return "collinear_anchors";
    case ErrorCode::invalid_instance: return "invalid_instance";
    case ErrorCode::nontriangular_weights: return "nontriangular_weights";
    case ErrorCode::target_not_interior: return "target_not_interior";
    case ErrorCode::degenerate_tetrahedron: return "degenerate_tetrahedron";
    case ErrorCode::candidate_at_anchor: return "candidate_at_anchor";
    case ErrorCode::internal_inconsistency: return "internal_inconsistency";
    case ErrorCode::malformed_instance: return "malformed_instance";
  }
  return "unknown";
}

/// Single exception type for the whole library; the code tells callers (and
/// the CLI exit-code mapping) whether the input or the math went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fermat

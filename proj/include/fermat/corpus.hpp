#pragma once

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <vector>

// Built-in regression corpus: reference instances whose exact solutions are
// known in closed form, plus the four-decimal values they are conventionally
// quoted at. The CLI `corpus` subcommand and the acceptance suite both run
// against these.

namespace fermat::io {

struct DirectFixture {
  const char* name;
  bool classical;  // equal weights, solved through the specialized path
  std::array<Eigen::Vector2d, 3> anchors;
  Eigen::Vector3d weights;
  Eigen::Vector2d exact_point;
  double exact_value;
  Eigen::Vector2d printed_point;  // reference decimals, 1e-4 resolution
  double printed_value;
};

struct InverseFixture {
  const char* name;
  std::array<Eigen::Vector2d, 3> anchors;
  Eigen::Vector2d target;
  Eigen::Vector3d expected_ratio;  // weights up to a positive multiplier
  double exact_value;              // minimum on the raw determinant scale
};

const std::vector<DirectFixture>& direct_fixtures();
const InverseFixture& inverse_fixture();

struct CorpusOutcome {
  int passed = 0;
  int total = 0;
  bool ok() const { return passed == total; }
};

/// Runs every fixture, printing one pass/fail line each.
CorpusOutcome run_corpus(std::ostream& out);

}  // namespace fermat::io

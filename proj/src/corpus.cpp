#include "fermat/corpus.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "fermat/inverse.hpp"
#include "fermat/solver.hpp"

namespace fermat::io {
namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

std::vector<DirectFixture> build_direct_fixtures() {
  const double s3 = std::sqrt(3.0);
  const double s15 = std::sqrt(15.0);
  const double s7511 = std::sqrt(7511.0);

  std::vector<DirectFixture> f;

  f.push_back({"direct-a",
               false,
               {Vector2d(2, 6), Vector2d(1, 1), Vector2d(5, 1)},
               Vector3d(2, 3, 4),
               Vector2d((4103.0 + 1833.0 * s15) / 2866.0,
                        (29523.0 - 4481.0 * s15) / 8598.0),
               2.0 * std::sqrt(79.0 + 15.0 * s15),
               Vector2d(3.9086, 1.4152),
               23.4174});

  f.push_back({"direct-b",
               false,
               {Vector2d(2, 6), Vector2d(1, 1), Vector2d(5, 1)},
               Vector3d(3, 5, 4),
               Vector2d(751.0 / 485.0, 647.0 / 485.0),
               std::sqrt(970.0),
               Vector2d(1.5484, 1.3340),
               31.1448});

  const double s2 = std::sqrt(2.0);
  f.push_back({"direct-c",
               false,
               {Vector2d(0, 0), Vector2d(2, 0), Vector2d(-s2, s2)},
               Vector3d(1.5, 2, 2),
               Vector2d(1.0 - 1.0 / s2 - 3.0 / std::sqrt(110.0),
                        1.0 / s2 - 3.0 / std::sqrt(55.0) - 3.0 / std::sqrt(110.0)),
               std::sqrt(32.0 + 23.0 / s2 + 3.0 * std::sqrt(55.0 / 2.0)),
               Vector2d(0.0068, 0.0165),
               7.9997});

  f.push_back({"direct-d",
               false,
               {Vector2d(39, 57), Vector2d(22, 42), Vector2d(42, 75)},
               Vector3d(18, 41, 52),
               Vector2d(296577529815837.0 / 9297789607234.0 +
                            357441196078431.0 / 6020318770684015.0 * s7511,
                        271001243105952.0 / 4648894803617.0 +
                            432306390086253.0 / 12040637541368030.0 * s7511),
               std::sqrt(3068047.0 + 3915.0 * s7511),
               Vector2d(37.0432, 61.4053),
               1845.8994});

  f.push_back({"classical-a",
               true,
               {Vector2d(1, 1), Vector2d(3, 5), Vector2d(7, 2)},
               Vector3d(1, 1, 1),
               Vector2d(2.0 * (1029.0 + 79.0 * s3) / 687.0,
                        (1053.0 + 647.0 * s3) / 687.0),
               std::sqrt(41.0 + 22.0 * s3),
               Vector2d(3.3939, 3.1639),
               8.8941});

  f.push_back({"classical-b",
               true,
               {Vector2d(1, 2), Vector2d(3, 3), Vector2d(4, 1)},
               Vector3d(1, 1, 1),
               Vector2d((15.0 + s3) / 6.0, (3.0 + s3) / 2.0),
               std::sqrt(10.0 + 5.0 * s3),
               Vector2d(2.7886, 2.3660),
               4.3197});

  f.push_back({"classical-c",
               true,
               {Vector2d(0, 0), Vector2d(399, 0),
                Vector2d(5005.0 / 38.0, 9555.0 * s3 / 38.0)},
               Vector3d(1, 1, 1),
               Vector2d(21255.0 / 133.0, 8580.0 * s3 / 133.0),
               784.0,
               Vector2d(159.8120, 111.7368),
               784.0});

  f.push_back({"classical-d",
               true,
               {Vector2d(0, 0), Vector2d(2, 0), Vector2d(0, 1)},
               Vector3d(1, 1, 1),
               Vector2d(1.0 / 13.0 + 4.0 * s3 / 39.0,
                        8.0 / 13.0 - 7.0 * s3 / 39.0),
               std::sqrt(5.0 + 2.0 * s3),
               Vector2d(0.2545, 0.3045),
               2.9093});

  return f;
}

InverseFixture build_inverse_fixture() {
  const double s15 = std::sqrt(15.0);
  return {"inverse-a",
          {Vector2d(2, 6), Vector2d(1, 1), Vector2d(5, 1)},
          Vector2d((4103.0 + 1833.0 * s15) / 2866.0,
                   (29523.0 - 4481.0 * s15) / 8598.0),
          Vector3d(2, 3, 4),
          (-333980.0 + 193436.0 * s15) / 4299.0};
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

constexpr double kExactTol = 1e-12;    // against the closed-form expressions
constexpr double kPrintedTol = 1e-4;   // against the quoted decimals
constexpr double kRatioTol = 1e-9;     // inverse weight ratios

}  // namespace

const std::vector<DirectFixture>& direct_fixtures() {
  static const std::vector<DirectFixture> fixtures = build_direct_fixtures();
  return fixtures;
}

const InverseFixture& inverse_fixture() {
  static const InverseFixture fixture = build_inverse_fixture();
  return fixture;
}

CorpusOutcome run_corpus(std::ostream& out) {
  CorpusOutcome outcome;
  out << std::setprecision(15);

  for (const auto& f : direct_fixtures()) {
    ++outcome.total;
    Solution<double> s;
    if (f.classical) {
      s = solve_classical(f.anchors[0], f.anchors[1], f.anchors[2]);
    } else {
      s = solve(TriangleInstance<double>{f.anchors, f.weights});
    }
    const double point_err =
        std::max(rel_err(s.point.x(), f.exact_point.x()),
                 rel_err(s.point.y(), f.exact_point.y()));
    const double value_err = rel_err(s.value, f.exact_value);
    const double printed_err =
        std::max({std::abs(s.point.x() - f.printed_point.x()),
                  std::abs(s.point.y() - f.printed_point.y()),
                  std::abs(s.value - f.printed_value)});
    const bool pass = s.regime == Regime::interior && point_err <= kExactTol &&
                      value_err <= kExactTol && printed_err <= kPrintedTol;
    outcome.passed += pass;
    out << (pass ? "PASS" : "FAIL") << "  " << f.name << "  point=("
        << s.point.x() << ", " << s.point.y() << ")  value=" << s.value
        << "  point_rel=" << point_err << "  value_rel=" << value_err << "\n";
  }

  {
    const auto& f = inverse_fixture();
    ++outcome.total;
    const auto inv = inverse_weights(f.anchors, f.target);
    const Eigen::Vector3d want = f.expected_ratio / f.expected_ratio.sum();
    double ratio_err = 0;
    for (int j = 0; j < 3; ++j)
      ratio_err = std::max(ratio_err, rel_err(inv.weight[j], want[j]));
    const double value_err = rel_err(inv.min_value, f.exact_value);
    const bool pass = ratio_err <= kRatioTol && value_err <= kExactTol;
    outcome.passed += pass;
    out << (pass ? "PASS" : "FAIL") << "  " << f.name << "  weights=("
        << inv.weight[0] << ", " << inv.weight[1] << ", " << inv.weight[2]
        << ")  min=" << inv.min_value << "  ratio_rel=" << ratio_err
        << "  value_rel=" << value_err << "\n";
  }

  out << outcome.passed << "/" << outcome.total << " corpus fixtures passed\n";
  return outcome;
}

}  // namespace fermat::io

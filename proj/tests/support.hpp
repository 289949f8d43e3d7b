#pragma once

// Shared deterministic generators for the test suites. Anchor coordinates are
// uniform in [-10, 10]^2 and weights uniform in [0.5, 2], the same population
// the acceptance suite draws from; regime filtering happens by rejection.

#include <array>
#include <random>

#include "fermat/instance.hpp"
#include "fermat/solver.hpp"

namespace testsupport {

using fermat::TriangleInstance;
using Rng = std::mt19937_64;

inline Eigen::Vector2d random_point(Rng& rng, double lo = -10.0,
                                    double hi = 10.0) {
  std::uniform_real_distribution<double> coord(lo, hi);
  return {coord(rng), coord(rng)};
}

inline std::array<Eigen::Vector2d, 3> random_anchors(Rng& rng) {
  for (;;) {
    const std::array<Eigen::Vector2d, 3> a = {random_point(rng),
                                              random_point(rng),
                                              random_point(rng)};
    const double scale = fermat::longest_side(a);
    // skip the (vanishingly rare) numerically collinear draws
    if (fermat::doubled_area(a[0], a[1], a[2]) > 1e-9 * scale * scale)
      return a;
  }
}

/// Anchors kept comfortably nondegenerate, for properties whose floating
/// point conditioning degrades on slivers.
inline std::array<Eigen::Vector2d, 3> random_well_shaped_anchors(Rng& rng) {
  for (;;) {
    const auto a = random_anchors(rng);
    const double scale = fermat::longest_side(a);
    if (fermat::doubled_area(a[0], a[1], a[2]) > 1e-2 * scale * scale)
      return a;
  }
}

inline Eigen::Vector3d random_weights(Rng& rng) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  return {weight(rng), weight(rng), weight(rng)};
}

inline TriangleInstance<double> random_instance(Rng& rng) {
  return {random_anchors(rng), random_weights(rng)};
}

inline TriangleInstance<double> random_interior_instance(Rng& rng) {
  for (;;) {
    auto t = random_instance(rng);
    if (!fermat::vertex_test(t)) return t;
  }
}

inline TriangleInstance<double> random_vertex_instance(Rng& rng) {
  for (;;) {
    auto t = random_instance(rng);
    if (fermat::vertex_test(t)) return t;
  }
}

/// Strictly interior point of a triangle via uniform barycentric sampling,
/// kept away from the boundary by the floor.
inline Eigen::Vector2d random_interior_point(
    Rng& rng, const std::array<Eigen::Vector2d, 3>& anchors,
    double floor = 1e-4) {
  std::exponential_distribution<double> expo(1.0);
  for (;;) {
    Eigen::Vector3d bary(expo(rng), expo(rng), expo(rng));
    bary /= bary.sum();
    if (bary.minCoeff() < floor) continue;
    return bary[0] * anchors[0] + bary[1] * anchors[1] + bary[2] * anchors[2];
  }
}

}  // namespace testsupport

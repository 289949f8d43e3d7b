#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fermat/oracle.hpp"
#include "fermat/solver.hpp"
#include "support.hpp"

using Eigen::Vector2d;
using Eigen::Vector3d;
using namespace fermat;

namespace {

const TriangleInstance<double> kWeighted234{
    {Vector2d(2, 6), Vector2d(1, 1), Vector2d(5, 1)}, Vector3d(2, 3, 4)};
const TriangleInstance<double> kWeighted354{
    {Vector2d(2, 6), Vector2d(1, 1), Vector2d(5, 1)}, Vector3d(3, 5, 4)};

TriangleInstance<double> equilateral_equal() {
  return {{Vector2d(0, 0), Vector2d(1, 0),
           Vector2d(0.5, std::sqrt(3.0) / 2.0)},
          Vector3d(1, 1, 1)};
}

}  // namespace

TEST_CASE("stationarity residual") {
  SUBCASE("vanishes at the closed-form point") {
    const auto s = solve(kWeighted354);
    CHECK(stationarity_residual(kWeighted354.anchor, kWeighted354.weight,
                                s.point) < 1e-9 * kWeighted354.weight.sum());
  }

  SUBCASE("vanishes at the symmetric center") {
    const auto t = equilateral_equal();
    const Vector2d centroid =
        (t.anchor[0] + t.anchor[1] + t.anchor[2]) / 3.0;
    CHECK(stationarity_residual(t.anchor, t.weight, centroid) < 1e-14);
  }

  SUBCASE("agrees with central differences away from stationarity") {
    testsupport::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
      const auto t = testsupport::random_instance(rng);
      const double scale = longest_side(t.anchor);
      Vector2d p;
      do {
        p = testsupport::random_point(rng);
      } while ((p - t.anchor[0]).norm() < 0.05 * scale ||
               (p - t.anchor[1]).norm() < 0.05 * scale ||
               (p - t.anchor[2]).norm() < 0.05 * scale);

      const double h = 1e-6 * scale;
      Vector2d fd;
      fd.x() = (weighted_distance_sum(t.anchor, t.weight, p + Vector2d(h, 0)) -
                weighted_distance_sum(t.anchor, t.weight, p - Vector2d(h, 0))) /
               (2.0 * h);
      fd.y() = (weighted_distance_sum(t.anchor, t.weight, p + Vector2d(0, h)) -
                weighted_distance_sum(t.anchor, t.weight, p - Vector2d(0, h))) /
               (2.0 * h);
      const double residual = stationarity_residual(t.anchor, t.weight, p);
      CHECK(residual > 0.0);
      CHECK(std::abs(residual - fd.norm()) <= 1e-6 * t.weight.sum());
    }
  }

  SUBCASE("rejects candidates on an anchor") {
    CHECK_THROWS_AS(stationarity_residual(kWeighted354.anchor,
                                          kWeighted354.weight,
                                          kWeighted354.anchor[1]),
                    Error);
  }
}

TEST_CASE("weiszfeld iteration") {
  SUBCASE("reference instance") {
    const double s15 = std::sqrt(15.0);
    const Vector2d exact((4103.0 + 1833.0 * s15) / 2866.0,
                         (29523.0 - 4481.0 * s15) / 8598.0);
    const auto report = weiszfeld(kWeighted234);
    CHECK(report.converged);
    CHECK_FALSE(report.locked_vertex.has_value());
    CHECK((report.point - exact).norm() < 1e-6);
  }

  SUBCASE("dominant weight locks the vertex") {
    auto t = kWeighted234;
    t.weight = Vector3d(10, 1, 1);
    const auto report = weiszfeld(t);
    CHECK(report.converged);
    REQUIRE(report.locked_vertex.has_value());
    CHECK(*report.locked_vertex == 0);
    CHECK(report.point == t.anchor[0]);
  }

  SUBCASE("symmetric instance converges to the centroid") {
    const auto t = equilateral_equal();
    const Vector2d centroid =
        (t.anchor[0] + t.anchor[1] + t.anchor[2]) / 3.0;
    const auto report = weiszfeld(t);
    CHECK(report.converged);
    CHECK((report.point - centroid).norm() < 1e-9);
  }

  SUBCASE("objective never increases along the iteration") {
    testsupport::Rng rng(72);
    for (int i = 0; i < 50; ++i) {
      const auto t = testsupport::random_interior_instance(rng);
      Vector2d x = Vector2d::Zero();
      for (int j = 0; j < 3; ++j) x += t.weight[j] * t.anchor[j];
      x /= t.weight.sum();

      double value = weighted_distance_sum(t.anchor, t.weight, x);
      for (int step = 0; step < 200; ++step) {
        const auto next = weiszfeld_step(t.anchor, t.weight, x);
        REQUIRE(next.has_value());
        const double next_value =
            weighted_distance_sum(t.anchor, t.weight, *next);
        CHECK(next_value <= value * (1.0 + 1e-12));
        x = *next;
        value = next_value;
      }
    }
  }

  SUBCASE("max iterations reports the best point without converging") {
    WeiszfeldConfig<double> config;
    config.max_iterations = 3;
    const auto report = weiszfeld(kWeighted354, config);
    CHECK_FALSE(report.converged);
    CHECK(report.iterations == 3);
    CHECK(report.point.allFinite());
  }
}

TEST_CASE("weiszfeld agrees with the closed form") {
  testsupport::Rng rng(73);
  SUBCASE("interior instances") {
    for (int i = 0; i < 300; ++i) {
      const auto t = testsupport::random_interior_instance(rng);
      const auto s = solve(t);
      const auto report = weiszfeld(t);
      const double scale = longest_side(t.anchor);
      CHECK(report.converged);
      CHECK((report.point - s.point).norm() <= 1e-6 * scale);
      const double value =
          weighted_distance_sum(t.anchor, t.weight, report.point);
      CHECK(std::abs(value - s.value) <= 1e-6 * s.value);
    }
  }
  SUBCASE("vertex instances lock the predicted vertex") {
    for (int i = 0; i < 100; ++i) {
      const auto t = testsupport::random_vertex_instance(rng);
      const auto expected = vertex_test(t);
      const auto report = weiszfeld(t);
      REQUIRE(report.locked_vertex.has_value());
      CHECK(*report.locked_vertex == *expected);
    }
  }
}

TEST_CASE("agreement holds up to the regime boundary") {
  // weights approach the vertex condition at the first anchor from inside;
  // the stationary point slides into that anchor but stays interior
  for (const double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
    const TriangleInstance<double> t{
        {Vector2d(0, 0), Vector2d(1, 0), Vector2d(0, 1)},
        Vector3d(5.0 * std::sqrt(1.0 - eps), 3, 4)};
    REQUIRE_FALSE(vertex_test(t).has_value());
    const auto s = solve(t);
    REQUIRE(s.regime == Regime::interior);
    CHECK(s.diag.worst() < 1e-12);
    const auto report = weiszfeld(t);
    CHECK(report.converged);
    CHECK((report.point - s.point).norm() < 1e-9);
  }
}

TEST_CASE("grid search lands within a pitch of the closed form") {
  testsupport::Rng rng(75);
  for (int i = 0; i < 10; ++i) {
    const auto t = testsupport::random_interior_instance(rng);
    const auto s = solve(t);
    const double resolution = 1e-3 * longest_side(t.anchor);
    const Vector2d got = grid_refine(t.anchor, t.weight, resolution);
    CHECK((got - s.point).norm() <= 2.0 * resolution);
  }
}

TEST_CASE("residual calibration around the closed-form point") {
  testsupport::Rng rng(74);
  for (int i = 0; i < 50; ++i) {
    const auto t = testsupport::random_interior_instance(rng);
    const auto s = solve(t);
    const double at_solution =
        stationarity_residual(t.anchor, t.weight, s.point);
    const double scale = longest_side(t.anchor);
    for (int k = 0; k < 8; ++k) {
      const double a = k * 6.283185307179586 / 8.0;
      const Vector2d probe =
          s.point + 1e-3 * scale * Vector2d(std::cos(a), std::sin(a));
      CHECK(at_solution <
            stationarity_residual(t.anchor, t.weight, probe));
    }
  }
}

TEST_CASE("grid refinement") {
  SUBCASE("classical reference instance") {
    const double s3 = std::sqrt(3.0);
    const std::array<Vector2d, 3> anchors = {Vector2d(1, 2), Vector2d(3, 3),
                                             Vector2d(4, 1)};
    const Vector2d exact((15.0 + s3) / 6.0, (3.0 + s3) / 2.0);
    const Vector2d got = grid_refine(anchors, Vector3d(1, 1, 1), 1e-3);
    CHECK((got - exact).norm() <= 2e-3);
  }

  SUBCASE("vertex instance ends at the vertex") {
    auto t = kWeighted234;
    t.weight = Vector3d(10, 1, 1);
    const Vector2d got = grid_refine(t.anchor, t.weight, 1e-4);
    CHECK((got - t.anchor[0]).norm() <= 1e-3);
  }

  SUBCASE("near-collinear anchors still produce a point") {
    const std::array<Vector2d, 3> thin = {Vector2d(0, 0), Vector2d(10, 1e-14),
                                          Vector2d(5, 1e-14)};
    const Vector2d got = grid_refine(thin, Vector3d(1, 1, 1), 1e-3);
    CHECK(got.allFinite());
  }
}

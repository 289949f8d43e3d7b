#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "fermat/errors.hpp"
#include "fermat/geometry.hpp"
#include "fermat/instance.hpp"

// Verification machinery that shares no code with the closed-form solver:
// first-order residuals, the classical fixed-point iteration for the weighted
// median, and a plain grid search. Everything here works from the objective
// alone.

namespace fermat {

template <typename Scalar>
struct WeiszfeldConfig {
  int max_iterations = 10000;
  /// Convergence once the update step drops below this times the longest side.
  Scalar step_tolerance = Scalar(1e-12);
  /// Iterates inside this times the longest side of an anchor trigger the
  /// anchor-optimality check.
  Scalar anchor_radius = Scalar(1e-14);
};

template <typename Scalar>
struct IterationReport {
  Vec2<Scalar> point = Vec2<Scalar>::Zero();
  int iterations = 0;
  Scalar final_step = std::numeric_limits<Scalar>::infinity();
  bool converged = false;
  /// Set when the iteration settled on an anchor that passes the vertex
  /// optimality condition; the point then equals that anchor.
  std::optional<int> locked_vertex;
};

/// Euclidean norm of the two-component first-order optimality system at the
/// candidate. The system is singular at the anchors, so candidates within
/// 1e-14 * L of one are rejected.
template <typename Scalar>
Scalar stationarity_residual(const std::array<Vec2<Scalar>, 3>& anchor,
                             const Vec3<Scalar>& weight,
                             const Vec2<Scalar>& candidate) {
  const Scalar scale = longest_side(anchor);
  for (const auto& p : anchor)
    if ((candidate - p).norm() <= Scalar(1e-14) * scale)
      throw Error(ErrorCode::candidate_at_anchor,
                  "residual is undefined at an anchor");
  return weighted_distance_gradient(anchor, weight, candidate).norm();
}

namespace detail {

/// Gradient of the objective at anchor j with the anchor's own (singular)
/// term dropped. The anchor is optimal exactly when this pull does not
/// exceed the anchor's weight.
template <typename Scalar>
Vec2<Scalar> anchor_pull(const std::array<Vec2<Scalar>, 3>& anchor,
                         const Vec3<Scalar>& weight, int j) {
  Vec2<Scalar> pull = Vec2<Scalar>::Zero();
  for (int l = 0; l < 3; ++l) {
    if (l == j) continue;
    const Vec2<Scalar> diff = anchor[j] - anchor[l];
    pull += weight[l] / diff.norm() * diff;
  }
  return pull;
}

/// Newton steps on the smooth objective, used to finish off the fixed-point
/// iteration: plain iteration slows to a crawl when the minimizer sits close
/// to an anchor, while the Hessian stays well defined and the quadratic
/// finish lands in a handful of steps. Guarded by an objective-decrease
/// check; returns true once the step drops below step_tol.
template <typename Scalar>
bool newton_polish(const std::array<Vec2<Scalar>, 3>& anchor,
                   const Vec3<Scalar>& weight, Vec2<Scalar>& x,
                   Scalar step_tol, Scalar snap, int limit, int& iterations,
                   Scalar& final_step) {
  for (int k = 0; k < limit; ++k) {
    Vec2<Scalar> g = Vec2<Scalar>::Zero();
    Eigen::Matrix<Scalar, 2, 2> h = Eigen::Matrix<Scalar, 2, 2>::Zero();
    for (int j = 0; j < 3; ++j) {
      const Vec2<Scalar> diff = x - anchor[j];
      const Scalar dist = diff.norm();
      if (dist <= snap) return false;
      const Vec2<Scalar> u = diff / dist;
      g += weight[j] * u;
      h += weight[j] / dist *
           (Eigen::Matrix<Scalar, 2, 2>::Identity() - u * u.transpose());
    }
    const Scalar det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
    if (!(det > Scalar(0))) return false;
    const Vec2<Scalar> delta(-(h(1, 1) * g.x() - h(0, 1) * g.y()) / det,
                             -(h(0, 0) * g.y() - h(1, 0) * g.x()) / det);
    if (!delta.allFinite()) return false;
    if (weighted_distance_sum(anchor, weight, x + delta) >
        weighted_distance_sum(anchor, weight, x))
      return false;
    x += delta;
    ++iterations;
    final_step = delta.norm();
    if (final_step < step_tol) return true;
  }
  return false;
}

}  // namespace detail

/// One fixed-point update of the weighted-median iteration; empty when x
/// sits exactly on an anchor.
template <typename Scalar>
std::optional<Vec2<Scalar>> weiszfeld_step(
    const std::array<Vec2<Scalar>, 3>& anchor, const Vec3<Scalar>& weight,
    const Vec2<Scalar>& x) {
  Vec2<Scalar> numer = Vec2<Scalar>::Zero();
  Scalar denom(0);
  for (int j = 0; j < 3; ++j) {
    const Scalar dist = (x - anchor[j]).norm();
    if (dist == Scalar(0)) return std::nullopt;
    const Scalar c = weight[j] / dist;
    numer += c * anchor[j];
    denom += c;
  }
  return Vec2<Scalar>(numer / denom);
}

/// Fixed-point iteration from the weighted centroid. Anchors met along the
/// way (and up front) are tested for vertex optimality; a non-optimal anchor
/// is left with the standard pull-away step, an optimal one locks the run.
template <typename Scalar>
IterationReport<Scalar> weiszfeld(const TriangleInstance<Scalar>& t,
                                  const WeiszfeldConfig<Scalar>& config = {}) {
  validate(t);
  const Scalar scale = longest_side(t.anchor);
  const Scalar snap = config.anchor_radius * scale;
  const Scalar step_tol = config.step_tolerance * scale;

  IterationReport<Scalar> report;

  // A vertex-optimal anchor is the global minimizer; detect it exactly
  // instead of creeping toward it.
  for (int j = 0; j < 3; ++j) {
    if (detail::anchor_pull(t.anchor, t.weight, j).norm() <= t.weight[j]) {
      report.point = t.anchor[j];
      report.locked_vertex = j;
      report.converged = true;
      report.final_step = Scalar(0);
      return report;
    }
  }

  Vec2<Scalar> x = Vec2<Scalar>::Zero();
  for (int j = 0; j < 3; ++j) x += t.weight[j] * t.anchor[j];
  x /= t.weight.sum();

  const Scalar polish_radius = Scalar(1e-3) * scale;

  while (report.iterations < config.max_iterations) {
    ++report.iterations;

    int nearest = 0;
    for (int j = 1; j < 3; ++j)
      if ((x - t.anchor[j]).norm() < (x - t.anchor[nearest]).norm())
        nearest = j;
    if ((x - t.anchor[nearest]).norm() <= snap) {
      const Vec2<Scalar> pull = detail::anchor_pull(t.anchor, t.weight, nearest);
      const Scalar pull_norm = pull.norm();
      if (pull_norm <= t.weight[nearest]) {
        report.point = t.anchor[nearest];
        report.locked_vertex = nearest;
        report.converged = true;
        report.final_step = Scalar(0);
        return report;
      }
      // pull-away: move along the descent direction far enough to escape
      Scalar inv_dist_sum(0);
      for (int l = 0; l < 3; ++l)
        if (l != nearest)
          inv_dist_sum += t.weight[l] / (t.anchor[nearest] - t.anchor[l]).norm();
      const Scalar step = (pull_norm - t.weight[nearest]) / inv_dist_sum;
      x = t.anchor[nearest] - step / pull_norm * pull;
      report.final_step = step;
      continue;
    }

    const auto next = weiszfeld_step(t.anchor, t.weight, x);
    const Scalar step = (*next - x).norm();
    x = *next;
    report.final_step = step;

    using std::min;
    const int budget =
        min(50, config.max_iterations - report.iterations);
    if (step < polish_radius &&
        detail::newton_polish(t.anchor, t.weight, x, step_tol, snap, budget,
                              report.iterations, report.final_step)) {
      report.point = x;
      report.converged = true;
      return report;
    }
    if (report.final_step < step_tol) {
      report.point = x;
      report.converged = true;
      return report;
    }
  }

  report.point = x;
  report.converged = false;
  return report;
}

/// Best objective value over a shrinking bounding-box grid. Convexity keeps
/// the minimizer within one pitch of the best node, so each pass may close
/// in on a window of a few cells around it; passes repeat until the pitch
/// drops below `resolution`. Desk-scale sanity oracle only; accepts any
/// anchors, even ones the solver rejects.
template <typename Scalar>
Vec2<Scalar> grid_refine(const std::array<Vec2<Scalar>, 3>& anchor,
                         const Vec3<Scalar>& weight, Scalar resolution) {
  using std::max;
  using std::min;
  constexpr int cells = 32;

  Vec2<Scalar> lo = anchor[0], hi = anchor[0];
  for (const auto& p : anchor) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Scalar span = (hi - lo).maxCoeff();
  resolution = max(resolution, Scalar(1e-14) * max(span, Scalar(1)));

  Vec2<Scalar> best = (lo + hi) / Scalar(2);
  Scalar best_value = weighted_distance_sum(anchor, weight, best);
  for (int pass = 0; pass < 64; ++pass) {
    const Vec2<Scalar> pitch = (hi - lo) / Scalar(cells);
    for (int ix = 0; ix <= cells; ++ix) {
      for (int iy = 0; iy <= cells; ++iy) {
        const Vec2<Scalar> p(lo.x() + Scalar(ix) * pitch.x(),
                             lo.y() + Scalar(iy) * pitch.y());
        const Scalar value = weighted_distance_sum(anchor, weight, p);
        if (value < best_value) {
          best_value = value;
          best = p;
        }
      }
    }
    if (pitch.maxCoeff() <= resolution) break;
    lo = best - Scalar(2) * pitch;
    hi = best + Scalar(2) * pitch;
  }
  return best;
}

}  // namespace fermat

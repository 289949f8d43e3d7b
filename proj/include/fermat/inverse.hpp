#pragma once

#include <array>
#include <cmath>

#include "fermat/errors.hpp"
#include "fermat/geometry.hpp"
#include "fermat/instance.hpp"

namespace fermat {

/// Weights that make a prescribed interior point the minimizer, together with
/// the predicted minimum. The weights are normalized to unit sum; `scale`
/// restores the raw determinant-based triple/quadruple, and `min_value` is
/// reported on that raw scale.
template <typename Scalar, int N>
struct InverseSolution {
  Eigen::Matrix<Scalar, N, 1> weight;
  Scalar scale = Scalar(0);
  Scalar min_value = Scalar(0);
  /// Power of the target with respect to the circumscribed circle/sphere;
  /// negative for strictly interior targets.
  Scalar power = Scalar(0);
  /// Gradient norm of the raw-weight objective at the target, divided by the
  /// raw weight sum.
  Scalar stationarity = Scalar(0);
  /// True when the anchors arrived with negative orientation and the
  /// computation absorbed the flip; the weights still follow input order.
  bool reoriented = false;
};

namespace detail {

/// det [[1,1,1,1],[x...],[y...],[x^2+y^2...]] over (target, p1, p2, p3),
/// which equals the raw-weight minimum for counterclockwise anchors and an
/// interior target. Translation-invariant, so it is evaluated on
/// target-centered coordinates where the squared-norm row cannot swamp the
/// rest.
template <typename Scalar>
Scalar lift_det4(const Vec2<Scalar>& target,
                 const std::array<Vec2<Scalar>, 3>& p) {
  Eigen::Matrix<Scalar, 3, 3> m;
  for (int j = 0; j < 3; ++j) {
    const Vec2<Scalar> d = p[j] - target;
    m(0, j) = d.x();
    m(1, j) = d.y();
    m(2, j) = d.squaredNorm();
  }
  return m.determinant();
}

/// 5x5 analog over (target, p1..p4) with a z row, same centered evaluation.
template <typename Scalar>
Scalar lift_det5(const Vec3<Scalar>& target,
                 const std::array<Vec3<Scalar>, 4>& p) {
  Eigen::Matrix<Scalar, 4, 4> m;
  for (int j = 0; j < 4; ++j) {
    const Vec3<Scalar> d = p[j] - target;
    m(0, j) = d.x();
    m(1, j) = d.y();
    m(2, j) = d.z();
    m(3, j) = d.squaredNorm();
  }
  return m.determinant();
}

/// Corner determinant of the tetrahedron with column j replaced by the
/// target: the unnormalized barycentric coordinate of the target.
template <typename Scalar>
Scalar corner_det_replaced(const std::array<Vec3<Scalar>, 4>& p,
                           const Vec3<Scalar>& target, int j) {
  std::array<Vec3<Scalar>, 4> cols = p;
  cols[j] = target;
  return signed_volume6(cols);
}

}  // namespace detail

/// Signed power of p with respect to the circle through the three anchors:
/// |CP|^2 - R^2 for circumcenter C and circumradius R. Negative inside the
/// circle, zero on it.
template <typename Scalar>
Scalar power_of_point(const std::array<Vec2<Scalar>, 3>& anchor,
                      const Vec2<Scalar>& p,
                      const Tolerances<Scalar>& tol = {}) {
  validate_anchors(anchor, tol);
  const Scalar oriented = doubled_area_signed(anchor[0], anchor[1], anchor[2]);
  return -detail::lift_det4(p, anchor) / oriented;
}

/// Spherical analog for a tetrahedron.
template <typename Scalar>
Scalar power_of_point(const Tetrahedron<Scalar>& t, const Vec3<Scalar>& p,
                      const Tolerances<Scalar>& tol = {}) {
  validate(t, tol);
  return detail::lift_det5(p, t.anchor) / signed_volume6(t.anchor);
}

/// Weights under which the given interior target is the minimizer of the
/// three-anchor objective: distance to each anchor times the signed area of
/// the opposite sub-triangle, orientation-corrected and normalized.
template <typename Scalar>
InverseSolution<Scalar, 3> inverse_weights(
    const std::array<Vec2<Scalar>, 3>& anchor, const Vec2<Scalar>& target,
    const Tolerances<Scalar>& tol = {}) {
  validate_anchors(anchor, tol);
  if (!target.allFinite())
    throw Error(ErrorCode::invalid_instance, "target coordinate not finite");

  const Scalar oriented = doubled_area_signed(anchor[0], anchor[1], anchor[2]);
  const Scalar sign = oriented < Scalar(0) ? Scalar(-1) : Scalar(1);
  const Vec3<Scalar> sub(doubled_area_signed(target, anchor[1], anchor[2]),
                         doubled_area_signed(anchor[0], target, anchor[2]),
                         doubled_area_signed(anchor[0], anchor[1], target));
  const Vec3<Scalar> bary = sub / oriented;
  if (!(bary.minCoeff() > tol.interior))
    throw Error(ErrorCode::target_not_interior,
                "target must lie strictly inside the triangle");

  InverseSolution<Scalar, 3> inv;
  Vec3<Scalar> raw;
  for (int j = 0; j < 3; ++j)
    raw[j] = (target - anchor[j]).norm() * sub[j] * sign;
  if (!(raw.minCoeff() > Scalar(0)))
    throw Error(ErrorCode::internal_inconsistency,
                "interior target produced a nonpositive weight");

  inv.scale = raw.sum();
  inv.weight = raw / inv.scale;
  inv.min_value = sign * detail::lift_det4(target, anchor);
  inv.power = -detail::lift_det4(target, anchor) / oriented;
  inv.stationarity =
      weighted_distance_gradient(anchor, raw, target).norm() / inv.scale;
  inv.reoriented = sign < Scalar(0);
  return inv;
}

/// Minimum of the raw-weight objective at the target, straight from the
/// lifted determinant. Same preconditions as inverse_weights.
template <typename Scalar>
Scalar inverse_min_value(const std::array<Vec2<Scalar>, 3>& anchor,
                         const Vec2<Scalar>& target,
                         const Tolerances<Scalar>& tol = {}) {
  validate_anchors(anchor, tol);
  const Scalar oriented = doubled_area_signed(anchor[0], anchor[1], anchor[2]);
  const Vec3<Scalar> bary = barycentric(anchor[0], anchor[1], anchor[2], target);
  if (!(bary.minCoeff() > tol.interior))
    throw Error(ErrorCode::target_not_interior,
                "target must lie strictly inside the triangle");
  const Scalar sign = oriented < Scalar(0) ? Scalar(-1) : Scalar(1);
  return sign * detail::lift_det4(target, anchor);
}

/// Spatial counterpart: four weights making the target the minimizer over a
/// tetrahedron's anchors.
template <typename Scalar>
InverseSolution<Scalar, 4> inverse_weights(const Tetrahedron<Scalar>& t,
                                           const Vec3<Scalar>& target,
                                           const Tolerances<Scalar>& tol = {}) {
  validate(t, tol);
  if (!target.allFinite())
    throw Error(ErrorCode::invalid_instance, "target coordinate not finite");

  const Scalar volume = signed_volume6(t.anchor);
  const Scalar sign = volume < Scalar(0) ? Scalar(-1) : Scalar(1);
  Vec4<Scalar> sub;
  for (int j = 0; j < 4; ++j)
    sub[j] = detail::corner_det_replaced(t.anchor, target, j);
  const Vec4<Scalar> bary = sub / volume;
  if (!(bary.minCoeff() > tol.interior))
    throw Error(ErrorCode::target_not_interior,
                "target must lie strictly inside the tetrahedron");

  InverseSolution<Scalar, 4> inv;
  Vec4<Scalar> raw;
  for (int j = 0; j < 4; ++j)
    raw[j] = (target - t.anchor[j]).norm() * sub[j] * sign;
  if (!(raw.minCoeff() > Scalar(0)))
    throw Error(ErrorCode::internal_inconsistency,
                "interior target produced a nonpositive weight");

  inv.scale = raw.sum();
  inv.weight = raw / inv.scale;
  inv.min_value = -sign * detail::lift_det5(target, t.anchor);
  inv.power = detail::lift_det5(target, t.anchor) / volume;
  inv.stationarity =
      weighted_distance_gradient(t.anchor, raw, target).norm() / inv.scale;
  inv.reoriented = sign < Scalar(0);
  return inv;
}

template <typename Scalar>
Scalar inverse_min_value(const Tetrahedron<Scalar>& t,
                         const Vec3<Scalar>& target,
                         const Tolerances<Scalar>& tol = {}) {
  validate(t, tol);
  const Scalar volume = signed_volume6(t.anchor);
  const Scalar sign = volume < Scalar(0) ? Scalar(-1) : Scalar(1);
  Vec4<Scalar> sub;
  for (int j = 0; j < 4; ++j)
    sub[j] = detail::corner_det_replaced(t.anchor, target, j);
  if (!((sub / volume).minCoeff() > tol.interior))
    throw Error(ErrorCode::target_not_interior,
                "target must lie strictly inside the tetrahedron");
  return -sign * detail::lift_det5(target, t.anchor);
}

}  // namespace fermat

#pragma once

#include <array>
#include <cmath>

#include "fermat/errors.hpp"
#include "fermat/geometry.hpp"

namespace fermat {

template <typename Scalar>
struct Tolerances {
  /// Noncollinearity threshold: doubled area must exceed geometry * L^2 with
  /// L the longest side, so the check is scale-free.
  Scalar geometry = Scalar(1e-12);
  /// Relative bound on stationarity and identity residuals.
  Scalar residual = Scalar(1e-9);
  /// Barycentric floor below which an inverse-problem target counts as lying
  /// on the boundary and is rejected.
  Scalar interior = Scalar(1e-10);
};

/// Three noncollinear anchors plus a positive weight per anchor: one direct
/// problem. Plain aggregate; `checked` validates on construction and the
/// solver entry points re-validate cheap invariants anyway.
template <typename Scalar>
struct TriangleInstance {
  std::array<Vec2<Scalar>, 3> anchor;
  Vec3<Scalar> weight;

  static TriangleInstance checked(const std::array<Vec2<Scalar>, 3>& anchor,
                                  const Vec3<Scalar>& weight,
                                  const Tolerances<Scalar>& tol = {});
};

template <typename Scalar>
void validate_anchors(const std::array<Vec2<Scalar>, 3>& anchor,
                      const Tolerances<Scalar>& tol = {}) {
  for (const auto& p : anchor)
    if (!p.allFinite())
      throw Error(ErrorCode::invalid_instance, "anchor coordinate not finite");
  const Scalar scale = longest_side(anchor);
  const Scalar area = doubled_area(anchor[0], anchor[1], anchor[2]);
  if (!(area > tol.geometry * scale * scale))
    throw Error(ErrorCode::collinear_anchors,
                "anchors are collinear or too close to collinear");
}

template <typename Scalar>
void validate(const TriangleInstance<Scalar>& t,
              const Tolerances<Scalar>& tol = {}) {
  using std::isfinite;
  validate_anchors(t.anchor, tol);
  for (int j = 0; j < 3; ++j)
    if (!(isfinite(t.weight[j]) && t.weight[j] > Scalar(0)))
      throw Error(ErrorCode::invalid_instance,
                  "weights must be positive and finite");
}

template <typename Scalar>
TriangleInstance<Scalar> TriangleInstance<Scalar>::checked(
    const std::array<Vec2<Scalar>, 3>& anchor, const Vec3<Scalar>& weight,
    const Tolerances<Scalar>& tol) {
  TriangleInstance t{anchor, weight};
  validate(t, tol);
  return t;
}

/// Four noncoplanar anchors for the spatial inverse problem. Stored in input
/// order; the inverse routines absorb the orientation sign internally so the
/// returned weights always line up with the anchors as given.
template <typename Scalar>
struct Tetrahedron {
  std::array<Vec3<Scalar>, 4> anchor;

  static Tetrahedron checked(const std::array<Vec3<Scalar>, 4>& anchor,
                             const Tolerances<Scalar>& tol = {});
};

/// Signed corner determinant of the tetrahedron, six times its signed volume.
template <typename Scalar>
Scalar signed_volume6(const std::array<Vec3<Scalar>, 4>& p) {
  return (p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0]));
}

template <typename Scalar>
void validate(const Tetrahedron<Scalar>& t, const Tolerances<Scalar>& tol = {}) {
  using std::abs;
  using std::max;
  for (const auto& p : t.anchor)
    if (!p.allFinite())
      throw Error(ErrorCode::invalid_instance, "anchor coordinate not finite");
  Scalar scale(0);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      scale = max(scale, (t.anchor[a] - t.anchor[b]).norm());
  if (!(abs(signed_volume6(t.anchor)) > tol.geometry * scale * scale * scale))
    throw Error(ErrorCode::degenerate_tetrahedron,
                "anchors are coplanar or too close to coplanar");
}

template <typename Scalar>
Tetrahedron<Scalar> Tetrahedron<Scalar>::checked(
    const std::array<Vec3<Scalar>, 4>& anchor, const Tolerances<Scalar>& tol) {
  Tetrahedron t{anchor};
  validate(t, tol);
  return t;
}

}  // namespace fermat

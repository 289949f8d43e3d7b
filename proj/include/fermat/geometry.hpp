#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace fermat {

template <typename Scalar> using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

/// Signed doubled area of triangle (a, b, c); positive when the vertices run
/// counterclockwise.
template <typename Scalar>
Scalar doubled_area_signed(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                           const Vec2<Scalar>& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
}

template <typename Scalar>
Scalar doubled_area(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                    const Vec2<Scalar>& c) {
  using std::abs;
  return abs(doubled_area_signed(a, b, c));
}

/// det [[1,1,1],[a0,a1,a2],[b0,b1,b2]], shared by the closed-form point
/// formulas and the inverse-problem determinants.
template <typename Scalar>
Scalar unit_top_det(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  return (a[1] * b[2] - a[2] * b[1]) - (a[0] * b[2] - a[2] * b[0]) +
         (a[0] * b[1] - a[1] * b[0]);
}

template <typename Scalar>
struct SideLengths {
  Scalar r12, r13, r23;
};

template <typename Scalar>
SideLengths<Scalar> side_lengths(const std::array<Vec2<Scalar>, 3>& p) {
  return {(p[0] - p[1]).norm(), (p[0] - p[2]).norm(), (p[1] - p[2]).norm()};
}

template <typename Scalar>
Scalar longest_side(const std::array<Vec2<Scalar>, 3>& p) {
  using std::max;
  const auto s = side_lengths(p);
  return max(s.r12, max(s.r13, s.r23));
}

/// Barycentric coordinates of p with respect to (a, b, c), normalized so the
/// three components sum to one. All positive exactly when p is strictly
/// inside the triangle.
template <typename Scalar>
Vec3<Scalar> barycentric(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                         const Vec2<Scalar>& c, const Vec2<Scalar>& p) {
  const Scalar whole = doubled_area_signed(a, b, c);
  return Vec3<Scalar>(doubled_area_signed(p, b, c),
                      doubled_area_signed(a, p, c),
                      doubled_area_signed(a, b, p)) /
         whole;
}

/// Center of the circle through three noncollinear points.
template <typename Scalar>
Vec2<Scalar> circumcenter(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                          const Vec2<Scalar>& c) {
  Eigen::Matrix<Scalar, 2, 2> lhs;
  lhs.row(0) = Scalar(2) * (b - a).transpose();
  lhs.row(1) = Scalar(2) * (c - a).transpose();
  const Vec2<Scalar> rhs(b.squaredNorm() - a.squaredNorm(),
                         c.squaredNorm() - a.squaredNorm());
  return lhs.inverse() * rhs;
}

/// Center of the sphere through four noncoplanar points.
template <typename Scalar>
Vec3<Scalar> circumcenter(const std::array<Vec3<Scalar>, 4>& p) {
  Eigen::Matrix<Scalar, 3, 3> lhs;
  Vec3<Scalar> rhs;
  for (int i = 0; i < 3; ++i) {
    lhs.row(i) = Scalar(2) * (p[i + 1] - p[0]).transpose();
    rhs[i] = p[i + 1].squaredNorm() - p[0].squaredNorm();
  }
  return lhs.partialPivLu().solve(rhs);
}

/// Weighted sum of distances from p to the anchors: the objective that the
/// whole library minimizes.
template <typename Scalar, int Dim, std::size_t N, typename Derived>
Scalar weighted_distance_sum(
    const std::array<Eigen::Matrix<Scalar, Dim, 1>, N>& anchor,
    const Eigen::Matrix<Scalar, static_cast<int>(N), 1>& weight,
    const Eigen::MatrixBase<Derived>& p) {
  Scalar total(0);
  for (std::size_t j = 0; j < N; ++j)
    total += weight[static_cast<Eigen::Index>(j)] * (p - anchor[j]).norm();
  return total;
}

/// Gradient of the weighted distance sum. Singular at the anchors themselves;
/// callers keep p away from them.
template <typename Scalar, int Dim, std::size_t N, typename Derived>
Eigen::Matrix<Scalar, Dim, 1> weighted_distance_gradient(
    const std::array<Eigen::Matrix<Scalar, Dim, 1>, N>& anchor,
    const Eigen::Matrix<Scalar, static_cast<int>(N), 1>& weight,
    const Eigen::MatrixBase<Derived>& p) {
  Eigen::Matrix<Scalar, Dim, 1> g = Eigen::Matrix<Scalar, Dim, 1>::Zero();
  for (std::size_t j = 0; j < N; ++j) {
    const Eigen::Matrix<Scalar, Dim, 1> diff = p - anchor[j];
    g += weight[static_cast<Eigen::Index>(j)] / diff.norm() * diff;
  }
  return g;
}

}  // namespace fermat

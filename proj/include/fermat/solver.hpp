#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "fermat/errors.hpp"
#include "fermat/geometry.hpp"
#include "fermat/instance.hpp"

namespace fermat {

enum class Regime { interior, vertex };

/// Residuals of the algebraic identities the closed form is built on, all
/// stored relative to their natural scale. Populated for interior solutions;
/// zero for vertex solutions, where none of the identities apply.
template <typename Scalar>
struct Diagnostics {
  /// Gradient norm at the solution point divided by the weight sum.
  Scalar stationarity = Scalar(0);
  /// Worst relative gap between the measured anchor distances and their
  /// closed-form expressions.
  Scalar anchor_distance = Scalar(0);
  /// Pairwise products of the mixing coefficients against 4 * sigma * S * d.
  Scalar coeff_pair_identity = Scalar(0);
  /// Squared sides against the mixing coefficients: sum r^2 K vs 2 * S * d.
  Scalar coeff_side_identity = Scalar(0);
  /// Gap between the two algebraic routes to the squared minimum.
  Scalar min_square_split = Scalar(0);
  /// Gap between the squared minimum and its dual-problem form.
  Scalar dual_split = Scalar(0);

  Scalar worst() const {
    using std::max;
    return max(stationarity,
               max(anchor_distance,
                   max(coeff_pair_identity,
                       max(coeff_side_identity,
                           max(min_square_split, dual_split)))));
  }
};

template <typename Scalar>
struct Solution {
  Regime regime = Regime::interior;
  /// Anchor index (0-based) when the minimum sits at a vertex, -1 otherwise.
  int vertex = -1;
  Vec2<Scalar> point = Vec2<Scalar>::Zero();
  Scalar value = Scalar(0);
  Diagnostics<Scalar> diag;
};

template <typename Scalar>
SideLengths<Scalar> side_lengths(const TriangleInstance<Scalar>& t) {
  return side_lengths(t.anchor);
}

/// Doubled area of the triangle whose side lengths are the three weights
/// (Heron form, factored radicand). Real precisely when the weights obey
/// their own triangle inequality; outside that regime the minimizer is a
/// vertex and this value is never needed, so nonpositive radicands collapse
/// to zero. A clearly negative radicand while the interior regime is
/// asserted means the vertex test was skipped.
template <typename Scalar>
Scalar weight_doubled_area(const Vec3<Scalar>& m, bool interior_regime = true,
                           Scalar rel_tol = Scalar(1e-9)) {
  using std::sqrt;
  const Scalar radicand = (m[0] + m[1] + m[2]) * (-m[0] + m[1] + m[2]) *
                          (m[0] - m[1] + m[2]) * (m[0] + m[1] - m[2]);
  if (radicand <= Scalar(0)) {
    const Scalar scale = m.squaredNorm() * m.squaredNorm();
    if (interior_regime && radicand < -rel_tol * scale)
      throw Error(ErrorCode::nontriangular_weights,
                  "weights violate their own triangle inequality outside the "
                  "vertex regime");
    return Scalar(0);
  }
  return sqrt(radicand) / Scalar(2);
}

/// Index (0-based) of the anchor at which the minimum is attained when that
/// anchor's weight dominates, empty when the minimizer lies strictly inside.
/// Equality counts as the vertex case: there the stationary point coincides
/// with the vertex and the vertex formula is exact. At most one test can
/// fire for a valid instance.
template <typename Scalar>
std::optional<int> vertex_test(const TriangleInstance<Scalar>& t) {
  const auto [r12, r13, r23] = side_lengths(t);
  const Vec3<Scalar>& m = t.weight;

  // cos of the corner angle at each anchor, via the law of cosines
  const Scalar cos1 =
      (r12 * r12 + r13 * r13 - r23 * r23) / (Scalar(2) * r12 * r13);
  const Scalar cos2 =
      (r12 * r12 + r23 * r23 - r13 * r13) / (Scalar(2) * r12 * r23);
  const Scalar cos3 =
      (r13 * r13 + r23 * r23 - r12 * r12) / (Scalar(2) * r13 * r23);

  const std::array<Scalar, 3> bound = {
      m[1] * m[1] + m[2] * m[2] + Scalar(2) * m[1] * m[2] * cos1,
      m[0] * m[0] + m[2] * m[2] + Scalar(2) * m[0] * m[2] * cos2,
      m[0] * m[0] + m[1] * m[1] + Scalar(2) * m[0] * m[1] * cos3,
  };

  std::optional<int> hit;
  for (int j = 0; j < 3; ++j) {
    if (m[j] * m[j] >= bound[j]) {
      if (hit)
        throw Error(ErrorCode::internal_inconsistency,
                    "two vertex conditions fired at once");
      hit = j;
    }
  }
  return hit;
}

/// The three mixing coefficients blending squared side lengths (scaled by the
/// weight-triangle area) with squared weights (scaled by the anchor-triangle
/// area). All strictly positive in the interior regime.
template <typename Scalar>
std::array<Scalar, 3> k_coefficients(const TriangleInstance<Scalar>& t,
                                     Scalar weight_area, Scalar area) {
  const auto [r12, r13, r23] = side_lengths(t);
  const Scalar s12 = r12 * r12, s13 = r13 * r13, s23 = r23 * r23;
  const Vec3<Scalar>& m = t.weight;
  const Scalar m1 = m[0] * m[0], m2 = m[1] * m[1], m3 = m[2] * m[2];

  const std::array<Scalar, 3> k = {
      (s12 + s13 - s23) * weight_area + (m2 + m3 - m1) * area,
      (s23 + s12 - s13) * weight_area + (m1 + m3 - m2) * area,
      (s13 + s23 - s12) * weight_area + (m1 + m2 - m3) * area,
  };
  for (int j = 0; j < 3; ++j)
    if (!(k[j] > Scalar(0)))
      throw Error(ErrorCode::internal_inconsistency,
                  "nonpositive mixing coefficient in the interior regime");
  return k;
}

/// Square of the minimum objective value, by three algebraic routes. `value`
/// avoids dividing by the weight-triangle area and stays stable near the
/// regime boundary, so it is the one the solver trusts; the other two feed
/// the identity diagnostics.
template <typename Scalar>
struct SquaredMinimum {
  Scalar value;
  Scalar from_coefficients;
  Scalar dual;
};

template <typename Scalar>
SquaredMinimum<Scalar> squared_minimum(const TriangleInstance<Scalar>& t,
                                       Scalar weight_area, Scalar area,
                                       const std::array<Scalar, 3>& k) {
  const auto [r12, r13, r23] = side_lengths(t);
  const Scalar s12 = r12 * r12, s13 = r13 * r13, s23 = r23 * r23;
  const Vec3<Scalar>& m = t.weight;
  const Scalar m1 = m[0] * m[0], m2 = m[1] * m[1], m3 = m[2] * m[2];

  SquaredMinimum<Scalar> d;
  d.value = Scalar(2) * area * weight_area +
            (m1 * (s12 + s13 - s23) + m2 * (s23 + s12 - s13) +
             m3 * (s13 + s23 - s12)) /
                Scalar(2);
  d.from_coefficients =
      (m1 * k[0] + m2 * k[1] + m3 * k[2]) / (Scalar(2) * weight_area);
  d.dual = Scalar(2) * area * weight_area +
           (s12 * (m1 + m2 - m3) + s13 * (m1 + m3 - m2) +
            s23 * (m2 + m3 - m1)) /
               Scalar(2);
  return d;
}

namespace detail {

template <typename Scalar>
Scalar rel_gap(Scalar lhs, Scalar rhs) {
  using std::abs;
  using std::max;
  return abs(lhs - rhs) / max(abs(rhs), Scalar(1e-300));
}

template <typename Scalar>
Solution<Scalar> vertex_solution(const TriangleInstance<Scalar>& t, int j) {
  Solution<Scalar> s;
  s.regime = Regime::vertex;
  s.vertex = j;
  s.point = t.anchor[j];
  s.value = Scalar(0);
  for (int l = 0; l < 3; ++l)
    if (l != j) s.value += t.weight[l] * (t.anchor[j] - t.anchor[l]).norm();
  return s;
}

}  // namespace detail

/// Closed-form solution of the weighted three-anchor problem: either the
/// interior stationary point with the minimum value, or the dominant vertex.
template <typename Scalar>
Solution<Scalar> solve(const TriangleInstance<Scalar>& t,
                       const Tolerances<Scalar>& tol = {}) {
  using std::max;
  using std::sqrt;
  validate(t, tol);

  // The weight-triangle area is imaginary when the weights violate their own
  // triangle inequality, a sub-case that always lands here, so the vertex
  // test must run first.
  if (const auto j = vertex_test(t)) return detail::vertex_solution(t, *j);

  const Scalar area = doubled_area(t.anchor[0], t.anchor[1], t.anchor[2]);
  const Scalar warea = weight_doubled_area(t.weight, true, tol.residual);
  const auto k = k_coefficients(t, warea, area);
  const auto d = squared_minimum(t, warea, area, k);

  Solution<Scalar> s;
  s.regime = Regime::interior;
  const Scalar denom = Scalar(4) * area * warea * d.value;
  s.point = (k[1] * k[2] * t.anchor[0] + k[0] * k[2] * t.anchor[1] +
             k[0] * k[1] * t.anchor[2]) /
            denom;
  s.value = sqrt(d.value);

  s.diag.stationarity =
      weighted_distance_gradient(t.anchor, t.weight, s.point).norm() /
      t.weight.sum();
  Scalar worst(0);
  for (int j = 0; j < 3; ++j) {
    const Scalar predicted =
        t.weight[j] * k[j] / (Scalar(2) * warea * s.value);
    worst = max(worst, detail::rel_gap((s.point - t.anchor[j]).norm(),
                                       predicted));
  }
  s.diag.anchor_distance = worst;
  s.diag.coeff_pair_identity =
      detail::rel_gap(k[0] * k[1] + k[0] * k[2] + k[1] * k[2], denom);
  const auto [r12, r13, r23] = side_lengths(t);
  s.diag.coeff_side_identity =
      detail::rel_gap(r23 * r23 * k[0] + r13 * r13 * k[1] + r12 * r12 * k[2],
                      Scalar(2) * area * d.value);
  s.diag.min_square_split = detail::rel_gap(d.from_coefficients, d.value);
  s.diag.dual_split = detail::rel_gap(d.dual, d.value);
  return s;
}

/// Equal-weight specialization. All corner angles below 2*pi/3 give the
/// interior point through the reduced coefficient formulas; a wide corner
/// makes that corner's anchor the minimizer.
template <typename Scalar>
Solution<Scalar> solve_classical(const Vec2<Scalar>& p1, const Vec2<Scalar>& p2,
                                 const Vec2<Scalar>& p3,
                                 const Tolerances<Scalar>& tol = {}) {
  using std::sqrt;
  const std::array<Vec2<Scalar>, 3> anchor = {p1, p2, p3};
  validate_anchors(anchor, tol);
  const TriangleInstance<Scalar> t{anchor, Vec3<Scalar>::Ones()};

  const auto [r12, r13, r23] = side_lengths(anchor);
  const Scalar s12 = r12 * r12, s13 = r13 * r13, s23 = r23 * r23;

  // corner angle at anchor j is >= 2*pi/3 exactly when the j-th form is <= 0
  const std::array<Scalar, 3> wide = {
      s12 + s13 + r12 * r13 - s23,
      s23 + s12 + r12 * r23 - s13,
      s13 + s23 + r13 * r23 - s12,
  };
  for (int j = 0; j < 3; ++j)
    if (wide[j] <= Scalar(0)) return detail::vertex_solution(t, j);

  const Scalar root3 = sqrt(Scalar(3));
  const Scalar area = doubled_area(p1, p2, p3);
  const std::array<Scalar, 3> k = {
      root3 / Scalar(2) * (s12 + s13 - s23) + area,
      root3 / Scalar(2) * (s23 + s12 - s13) + area,
      root3 / Scalar(2) * (s13 + s23 - s12) + area,
  };
  const Scalar d = (s12 + s13 + s23) / Scalar(2) + root3 * area;
  const Scalar d_from_k = (k[0] + k[1] + k[2]) / root3;

  Solution<Scalar> s;
  s.regime = Regime::interior;
  s.point = (k[1] * k[2] * p1 + k[0] * k[2] * p2 + k[0] * k[1] * p3) /
            (Scalar(2) * root3 * area * d);
  s.value = sqrt(d);
  s.diag.stationarity =
      weighted_distance_gradient(anchor, t.weight, s.point).norm() / Scalar(3);
  s.diag.min_square_split = detail::rel_gap(d_from_k, d);
  return s;
}

/// Equal-weight point through the determinant formulas whose denominators
/// carry no area term. Caller guarantees every corner angle < 2*pi/3; the
/// result is independent of the anchor order.
template <typename Scalar>
Vec2<Scalar> fermat_point_area_free(const Vec2<Scalar>& p1,
                                    const Vec2<Scalar>& p2,
                                    const Vec2<Scalar>& p3) {
  using std::abs;
  using std::sqrt;
  const Scalar root3 = sqrt(Scalar(3));
  const std::array<Vec2<Scalar>, 3> anchor = {p1, p2, p3};
  const auto [r12, r13, r23] = side_lengths(anchor);
  const Scalar s12 = r12 * r12, s13 = r13 * r13, s23 = r23 * r23;

  const Scalar oriented = doubled_area_signed(p1, p2, p3);
  const Scalar area = abs(oriented);
  const Scalar sign = oriented < Scalar(0) ? Scalar(-1) : Scalar(1);
  const Scalar d = (s12 + s13 + s23) / Scalar(2) + root3 * area;

  const Vec3<Scalar> xs(p1.x(), p2.x(), p3.x());
  const Vec3<Scalar> ys(p1.y(), p2.y(), p3.y());
  const Vec3<Scalar> dots(p2.dot(p3), p1.dot(p3), p1.dot(p2));

  const Scalar x = (xs.sum() * area + root3 * (xs[0] * s23 + xs[1] * s13 + xs[2] * s12) +
                    Scalar(3) * sign * unit_top_det(ys, dots)) /
                   (Scalar(2) * root3 * d);
  const Scalar y = (ys.sum() * area + root3 * (ys[0] * s23 + ys[1] * s13 + ys[2] * s12) -
                    Scalar(3) * sign * unit_top_det(xs, dots)) /
                   (Scalar(2) * root3 * d);
  return {x, y};
}

}  // namespace fermat

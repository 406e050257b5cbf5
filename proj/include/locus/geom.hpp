// Geometric primitives for range-based localization: balls, spheres,
// circles and their intersections, plus the triangle constructions
// (circumcircle, Fermat point, equilateral apex arc) used by the solvers.
//
// Everything here is header-only and templated on the scalar type. Points
// are Eigen column vectors with 2 or 3 rows; the maximum row count is fixed
// at 3 so no heap allocation happens.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace locus {

template <typename Scalar>
using VecN = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 3, 1>;
using Vec = VecN<double>;

/// Single tolerance for tangency/degeneracy classification. Applied to
/// residuals normalized by max(1, characteristic length).
inline constexpr double kGeomEps = 1e-9;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class CollinearError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DegenerateError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

template <typename Scalar>
struct Ball {
  VecN<Scalar> center;
  Scalar radius{0};

  [[nodiscard]] int dim() const { return static_cast<int>(center.size()); }
};

/// Circle in 2D (normal empty) or in a plane of 3D space (unit normal).
template <typename Scalar>
struct Circle {
  VecN<Scalar> center;
  Scalar radius{0};
  VecN<Scalar> normal;

  [[nodiscard]] int dim() const { return static_cast<int>(center.size()); }

  // In-plane orthonormal frame (u, v). 2D uses the coordinate axes; 3D
  // projects the coordinate axis with the smallest |normal| component.
  [[nodiscard]] std::pair<VecN<Scalar>, VecN<Scalar>> frame() const {
    if (dim() == 2) {
      VecN<Scalar> u(2), v(2);
      u << 1, 0;
      v << 0, 1;
      return {u, v};
    }
    Eigen::Matrix<Scalar, 3, 1> n = normal.template head<3>();
    int axis = 0;
    for (int k = 1; k < 3; ++k) {
      if (std::abs(n(k)) < std::abs(n(axis))) axis = k;
    }
    Eigen::Matrix<Scalar, 3, 1> e = Eigen::Matrix<Scalar, 3, 1>::Unit(axis);
    Eigen::Matrix<Scalar, 3, 1> u = (e - e.dot(n) * n).normalized();
    Eigen::Matrix<Scalar, 3, 1> v = n.cross(u);
    return {VecN<Scalar>(u), VecN<Scalar>(v)};
  }

  [[nodiscard]] VecN<Scalar> point_at(Scalar angle) const {
    auto [u, v] = frame();
    using std::cos;
    using std::sin;
    return center + radius * (cos(angle) * u + sin(angle) * v);
  }

  /// Angle in [0, 2π) of the projection of p onto the circle plane.
  [[nodiscard]] Scalar angle_of(const VecN<Scalar>& p) const {
    auto [u, v] = frame();
    const VecN<Scalar> w = p - center;
    using std::atan2;
    Scalar a = atan2(w.dot(v), w.dot(u));
    if (a < 0) a += Scalar(2 * std::numbers::pi);
    return a;
  }
};

/// Counter-clockwise arc (in the circle's own frame) from start to end.
template <typename Scalar>
struct Arc {
  Circle<Scalar> circle;
  Scalar start{0};
  Scalar end{0};

  [[nodiscard]] Scalar span() const { return end - start; }
  /// t in [0, 1] runs from the start to the end point.
  [[nodiscard]] VecN<Scalar> point_at(Scalar t) const {
    return circle.point_at(start + t * span());
  }
  [[nodiscard]] bool contains_angle(Scalar angle) const {
    const Scalar two_pi = Scalar(2 * std::numbers::pi);
    Scalar rel = std::fmod(angle - start, two_pi);
    if (rel < 0) rel += two_pi;
    return rel <= span() + Scalar(kGeomEps);
  }
};

template <typename Scalar>
struct Segment {
  VecN<Scalar> a;
  VecN<Scalar> b;

  [[nodiscard]] Scalar length() const { return (b - a).norm(); }
  [[nodiscard]] bool degenerate() const { return length() <= Scalar(kGeomEps) * std::max<Scalar>(1, a.norm()); }
  [[nodiscard]] VecN<Scalar> point_at(Scalar t) const { return a + t * (b - a); }
};

enum class IntersectionKind { Empty, Point, PointPair, Circle, Coincident };

template <typename Scalar>
struct IntersectionSet {
  IntersectionKind kind = IntersectionKind::Empty;
  std::vector<VecN<Scalar>> points;
  std::optional<Circle<Scalar>> circle;

  [[nodiscard]] bool empty() const { return kind == IntersectionKind::Empty; }
};

template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, 3, 1> lift3(const VecN<Scalar>& v) {
  Eigen::Matrix<Scalar, 3, 1> out = Eigen::Matrix<Scalar, 3, 1>::Zero();
  out.head(v.size()) = v;
  return out;
}

template <typename Scalar>
[[nodiscard]] VecN<Scalar> drop_to(const Eigen::Matrix<Scalar, 3, 1>& v, int dim) {
  return VecN<Scalar>(v.head(dim));
}

namespace detail {

template <typename Scalar>
void require_same_dim(const VecN<Scalar>& a, const VecN<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("points have different dimensions");
}

template <typename Scalar>
Scalar scale_of(Scalar a, Scalar b = 0, Scalar c = 0) {
  using std::abs;
  return std::max({Scalar(1), abs(a), abs(b), abs(c)});
}

// Circle-circle intersection inside the plane spanned by `u` (unit, from c1
// towards c2) and `perp`. Shared by the 2D and the 3D in-plane code paths.
template <typename Scalar>
IntersectionSet<Scalar> planar_pair(const VecN<Scalar>& c1, Scalar r1, Scalar r2, Scalar dist,
                                    const VecN<Scalar>& u, const VecN<Scalar>& perp) {
  const Scalar eps = Scalar(kGeomEps) * scale_of(r1, r2, dist);
  IntersectionSet<Scalar> out;
  if (dist > r1 + r2 + eps) return out;
  if (dist < std::abs(r1 - r2) - eps) return out;
  Scalar a = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist);
  a = std::clamp(a, -r1, r1);
  const Scalar h2 = r1 * r1 - a * a;
  const bool tangent = std::abs(dist - (r1 + r2)) <= eps || std::abs(dist - std::abs(r1 - r2)) <= eps || h2 <= 0;
  if (tangent) {
    out.kind = IntersectionKind::Point;
    out.points.push_back(c1 + a * u);
    return out;
  }
  using std::sqrt;
  const Scalar h = sqrt(h2);
  out.kind = IntersectionKind::PointPair;
  out.points.push_back(c1 + a * u + h * perp);
  out.points.push_back(c1 + a * u - h * perp);
  return out;
}

}  // namespace detail

/// S_1 ∩ S_2 for two circles in the plane.
template <typename Scalar>
[[nodiscard]] IntersectionSet<Scalar> circle_circle_intersect(const Ball<Scalar>& c1, const Ball<Scalar>& c2) {
  if (c1.dim() != 2 || c2.dim() != 2) throw DimensionMismatch("circle_circle_intersect needs 2D balls");
  const VecN<Scalar> delta = c2.center - c1.center;
  const Scalar dist = delta.norm();
  const Scalar eps = Scalar(kGeomEps) * detail::scale_of(c1.radius, c2.radius, dist);
  IntersectionSet<Scalar> out;
  if (dist <= eps) {
    if (std::abs(c1.radius - c2.radius) <= eps) {
      if (c1.radius <= eps) {
        out.kind = IntersectionKind::Point;
        out.points.push_back(c1.center);
      } else {
        out.kind = IntersectionKind::Coincident;
      }
    }
    return out;
  }
  const VecN<Scalar> u = delta / dist;
  VecN<Scalar> perp(2);
  perp << -u(1), u(0);
  return detail::planar_pair(VecN<Scalar>(c1.center), c1.radius, c2.radius, dist, u, perp);
}

/// S_1 ∩ S_2 for two spheres: empty, a tangency point, or a circle lying in
/// the radical plane.
template <typename Scalar>
[[nodiscard]] IntersectionSet<Scalar> sphere_sphere_intersect(const Ball<Scalar>& s1, const Ball<Scalar>& s2) {
  if (s1.dim() != 3 || s2.dim() != 3) throw DimensionMismatch("sphere_sphere_intersect needs 3D balls");
  const VecN<Scalar> delta = s2.center - s1.center;
  const Scalar dist = delta.norm();
  const Scalar r1 = s1.radius;
  const Scalar r2 = s2.radius;
  const Scalar eps = Scalar(kGeomEps) * detail::scale_of(r1, r2, dist);
  IntersectionSet<Scalar> out;
  if (dist <= eps) {
    if (std::abs(r1 - r2) <= eps) {
      if (r1 <= eps) {
        out.kind = IntersectionKind::Point;
        out.points.push_back(s1.center);
      } else {
        out.kind = IntersectionKind::Coincident;
      }
    }
    return out;
  }
  if (dist > r1 + r2 + eps || dist < std::abs(r1 - r2) - eps) return out;
  const VecN<Scalar> u = delta / dist;
  Scalar a = std::clamp((dist * dist + r1 * r1 - r2 * r2) / (2 * dist), -r1, r1);
  const Scalar h2 = r1 * r1 - a * a;
  if (std::abs(dist - (r1 + r2)) <= eps || std::abs(dist - std::abs(r1 - r2)) <= eps || h2 <= 0) {
    out.kind = IntersectionKind::Point;
    out.points.push_back(s1.center + a * u);
    return out;
  }
  using std::sqrt;
  out.kind = IntersectionKind::Circle;
  out.circle = Circle<Scalar>{VecN<Scalar>(s1.center + a * u), sqrt(h2), u};
  return out;
}

/// Dimension-dispatching pairwise intersection.
template <typename Scalar>
[[nodiscard]] IntersectionSet<Scalar> intersect(const Ball<Scalar>& a, const Ball<Scalar>& b) {
  detail::require_same_dim(a.center, b.center);
  return a.dim() == 2 ? circle_circle_intersect(a, b) : sphere_sphere_intersect(a, b);
}

template <typename Scalar>
[[nodiscard]] bool are_collinear(const VecN<Scalar>& p1, const VecN<Scalar>& p2, const VecN<Scalar>& p3) {
  const auto a = lift3<Scalar>(p2 - p1);
  const auto b = lift3<Scalar>(p3 - p1);
  const Scalar la = a.norm();
  const Scalar lb = b.norm();
  if (la == 0 || lb == 0) return true;
  // sine of the angle at p1
  return a.cross(b).norm() / (la * lb) <= Scalar(kGeomEps);
}

/// S_1 ∩ S_2 ∩ S_3. In 2D the result has at most one point for
/// non-collinear centers; in 3D at most two.
template <typename Scalar>
[[nodiscard]] IntersectionSet<Scalar> three_sphere_intersect(const Ball<Scalar>& s1, const Ball<Scalar>& s2,
                                                             const Ball<Scalar>& s3) {
  detail::require_same_dim(s1.center, s2.center);
  detail::require_same_dim(s1.center, s3.center);
  if (are_collinear(s1.center, s2.center, s3.center)) throw CollinearError("sphere centers are collinear");

  const auto on_third = [&](const VecN<Scalar>& p) {
    const Scalar r = (p - s3.center).norm();
    return std::abs(r * r - s3.radius * s3.radius) / std::max<Scalar>(1, s3.radius * s3.radius) <= Scalar(kGeomEps);
  };

  IntersectionSet<Scalar> out;
  const IntersectionSet<Scalar> pair = intersect(s1, s2);
  if (pair.kind == IntersectionKind::Point || pair.kind == IntersectionKind::PointPair) {
    for (const auto& p : pair.points) {
      if (on_third(p)) out.points.push_back(p);
    }
  } else if (pair.kind == IntersectionKind::Circle) {
    const Circle<Scalar>& c = *pair.circle;
    const Scalar offset = (s3.center - c.center).dot(c.normal);
    const VecN<Scalar> foot = s3.center - offset * c.normal;
    const Scalar rho2 = s3.radius * s3.radius - offset * offset;
    const Scalar eps = Scalar(kGeomEps) * std::max<Scalar>(1, s3.radius * s3.radius);
    if (rho2 >= -eps) {
      using std::sqrt;
      const Scalar rho = sqrt(std::max<Scalar>(0, rho2));
      const VecN<Scalar> delta = foot - c.center;
      const Scalar dist = delta.norm();
      const VecN<Scalar> u = delta / dist;
      const VecN<Scalar> perp = lift3<Scalar>(c.normal).cross(lift3<Scalar>(u));
      const auto planar = detail::planar_pair(VecN<Scalar>(c.center), c.radius, rho, dist, u, perp);
      for (const auto& p : planar.points) {
        if (on_third(p)) out.points.push_back(p);
      }
    }
  }
  if (out.points.size() == 1) out.kind = IntersectionKind::Point;
  if (out.points.size() == 2) out.kind = IntersectionKind::PointPair;
  return out;
}

/// Points of `set` closest to and farthest from `ref` (S^+ and S^-).
/// A single-point set returns that point twice.
template <typename Scalar>
[[nodiscard]] std::pair<VecN<Scalar>, VecN<Scalar>> extremal_points(const IntersectionSet<Scalar>& set,
                                                                    const VecN<Scalar>& ref) {
  switch (set.kind) {
    case IntersectionKind::Point:
      return {set.points[0], set.points[0]};
    case IntersectionKind::PointPair: {
      const Scalar d0 = (set.points[0] - ref).norm();
      const Scalar d1 = (set.points[1] - ref).norm();
      if (std::abs(d0 - d1) <= Scalar(kGeomEps) * std::max<Scalar>(1, d0)) {
        throw DegenerateError("reference point is equidistant from both intersection points");
      }
      return d0 < d1 ? std::pair{set.points[0], set.points[1]} : std::pair{set.points[1], set.points[0]};
    }
    case IntersectionKind::Circle: {
      const Circle<Scalar>& c = *set.circle;
      VecN<Scalar> w = ref - c.center;
      w -= w.dot(c.normal) * c.normal;
      const Scalar len = w.norm();
      if (len <= Scalar(kGeomEps) * std::max<Scalar>(1, c.radius)) {
        throw DegenerateError("reference point lies on the circle axis");
      }
      w /= len;
      return {c.center + c.radius * w, c.center - c.radius * w};
    }
    default:
      throw DegenerateError("extremal points need a point pair or a circle");
  }
}

template <typename Scalar>
[[nodiscard]] Circle<Scalar> circumcircle(const VecN<Scalar>& p1, const VecN<Scalar>& p2, const VecN<Scalar>& p3) {
  detail::require_same_dim(p1, p2);
  detail::require_same_dim(p1, p3);
  if (are_collinear(p1, p2, p3)) throw CollinearError("circumcircle of collinear points");
  const int dim = static_cast<int>(p1.size());
  using V3 = Eigen::Matrix<Scalar, 3, 1>;
  const V3 a = lift3<Scalar>(p1 - p3);
  const V3 b = lift3<Scalar>(p2 - p3);
  const V3 axb = a.cross(b);
  const V3 offset = V3(a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) / (2 * axb.squaredNorm());
  Circle<Scalar> c;
  c.center = p3 + drop_to<Scalar>(offset, dim);
  c.radius = (p1 - c.center).norm();
  if (dim == 3) c.normal = axb.normalized();
  return c;
}

/// Orthonormal 2D coordinates for the plane through three non-collinear
/// points. In 2D this is the identity chart.
template <typename Scalar>
struct PlaneFrame {
  int dim = 2;
  VecN<Scalar> origin;
  VecN<Scalar> e1;
  VecN<Scalar> e2;

  static PlaneFrame through(const VecN<Scalar>& p1, const VecN<Scalar>& p2, const VecN<Scalar>& p3) {
    PlaneFrame f;
    f.dim = static_cast<int>(p1.size());
    if (f.dim == 2) {
      f.origin = VecN<Scalar>::Zero(2);
      f.e1 = VecN<Scalar>::Unit(2, 0);
      f.e2 = VecN<Scalar>::Unit(2, 1);
      return f;
    }
    if (are_collinear(p1, p2, p3)) throw CollinearError("no unique plane through collinear points");
    f.origin = p1;
    f.e1 = (p2 - p1).normalized();
    VecN<Scalar> w = p3 - p1;
    w -= w.dot(f.e1) * f.e1;
    f.e2 = w.normalized();
    return f;
  }

  [[nodiscard]] VecN<Scalar> local(const VecN<Scalar>& p) const {
    VecN<Scalar> q(2);
    const VecN<Scalar> w = p - origin;
    q << w.dot(e1), w.dot(e2);
    return q;
  }
  [[nodiscard]] VecN<Scalar> global(const VecN<Scalar>& q) const { return origin + q(0) * e1 + q(1) * e2; }
  /// Unit normal of the plane (3D only).
  [[nodiscard]] VecN<Scalar> normal() const {
    return VecN<Scalar>(lift3<Scalar>(e1).cross(lift3<Scalar>(e2)));
  }
};

namespace detail {

template <typename Scalar>
VecN<Scalar> rot90(const VecN<Scalar>& v) {
  VecN<Scalar> r(2);
  r << -v(1), v(0);
  return r;
}

// Apex of the equilateral triangle on (a, b) lying on the side of `side`
// (or the opposite side when `same_side` is false). 2D coordinates.
template <typename Scalar>
VecN<Scalar> equilateral_apex(const VecN<Scalar>& a, const VecN<Scalar>& b, const VecN<Scalar>& side, bool same_side) {
  const VecN<Scalar> mid = (a + b) / 2;
  VecN<Scalar> n = rot90<Scalar>(b - a);
  if (n.dot(side - mid) < 0) n = -n;
  if (!same_side) n = -n;
  return mid + Scalar(std::numbers::sqrt3 / 2) * n;
}

}  // namespace detail

/// Point minimizing the sum of distances to the three vertices. Vertex rule
/// when an interior angle is at least 120°, otherwise the Torricelli
/// construction (intersection of two vertex-to-outer-apex lines).
template <typename Scalar>
[[nodiscard]] VecN<Scalar> fermat_point(const VecN<Scalar>& p1, const VecN<Scalar>& p2, const VecN<Scalar>& p3) {
  detail::require_same_dim(p1, p2);
  detail::require_same_dim(p1, p3);
  if (are_collinear(p1, p2, p3)) throw CollinearError("Fermat point of collinear points");
  const std::array<const VecN<Scalar>*, 3> p{&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i) {
    const VecN<Scalar> a = *p[(i + 1) % 3] - *p[i];
    const VecN<Scalar> b = *p[(i + 2) % 3] - *p[i];
    if (a.dot(b) / (a.norm() * b.norm()) <= Scalar(-0.5)) return *p[i];
  }
  const auto frame = PlaneFrame<Scalar>::through(p1, p2, p3);
  const VecN<Scalar> q1 = frame.local(p1), q2 = frame.local(p2), q3 = frame.local(p3);
  const VecN<Scalar> e1 = detail::equilateral_apex<Scalar>(q2, q3, q1, false);
  const VecN<Scalar> e2 = detail::equilateral_apex<Scalar>(q1, q3, q2, false);
  // q1 + t (e1 - q1) = q2 + s (e2 - q2)
  Eigen::Matrix<Scalar, 2, 2> m;
  m.col(0) = e1 - q1;
  m.col(1) = -(e2 - q2);
  const Eigen::Matrix<Scalar, 2, 1> ts = m.colPivHouseholderQr().solve(Eigen::Matrix<Scalar, 2, 1>(q2 - q1));
  return frame.global(VecN<Scalar>(q1 + ts(0) * (e1 - q1)));
}

template <typename Scalar>
struct ApexArc {
  VecN<Scalar> apex;
  Arc<Scalar> arc;
};

/// Equilateral apex over (z2, z3) on z1's side, and the arc of the
/// circumcircle of (apex, z2, z3) joining z2 and z3 on the opposite side.
template <typename Scalar>
[[nodiscard]] ApexArc<Scalar> apex_arc(const VecN<Scalar>& z1, const VecN<Scalar>& z2, const VecN<Scalar>& z3) {
  detail::require_same_dim(z1, z2);
  detail::require_same_dim(z1, z3);
  if (are_collinear(z1, z2, z3)) throw CollinearError("apex arc of collinear points");
  const auto frame = PlaneFrame<Scalar>::through(z1, z2, z3);
  const VecN<Scalar> q1 = frame.local(z1), q2 = frame.local(z2), q3 = frame.local(z3);
  const VecN<Scalar> mid = (q2 + q3) / 2;
  const Scalar side = (q3 - q2).norm();
  VecN<Scalar> w = detail::rot90<Scalar>(VecN<Scalar>((q3 - q2) / side));
  if (w.dot(q1 - mid) < 0) w = -w;

  ApexArc<Scalar> out;
  out.apex = frame.global(VecN<Scalar>(mid + Scalar(std::numbers::sqrt3 / 2) * side * w));
  Circle<Scalar> c;
  c.center = frame.global(VecN<Scalar>(mid + side / (2 * Scalar(std::numbers::sqrt3)) * w));
  c.radius = side / Scalar(std::numbers::sqrt3);
  if (frame.dim == 3) c.normal = frame.normal();
  const VecN<Scalar> far_mid = frame.global(VecN<Scalar>(mid + side / (2 * Scalar(std::numbers::sqrt3)) * w - c.radius * w));

  const Scalar two_pi = Scalar(2 * std::numbers::pi);
  const auto wrap = [two_pi](Scalar a) {
    a = std::fmod(a, two_pi);
    return a < 0 ? a + two_pi : a;
  };
  const Scalar a2 = c.angle_of(z2);
  const Scalar a3 = c.angle_of(z3);
  const Scalar am = c.angle_of(far_mid);
  if (wrap(am - a2) < wrap(a3 - a2)) {
    out.arc = Arc<Scalar>{c, a2, a2 + wrap(a3 - a2)};
  } else {
    out.arc = Arc<Scalar>{c, a3, a3 + wrap(a2 - a3)};
  }
  return out;
}

/// Points where the closed segment [a, b] crosses the sphere S of `ball`.
template <typename Scalar>
[[nodiscard]] std::vector<VecN<Scalar>> segment_sphere_intersect(const VecN<Scalar>& a, const VecN<Scalar>& b,
                                                                 const Ball<Scalar>& ball) {
  detail::require_same_dim(a, b);
  detail::require_same_dim(a, ball.center);
  const VecN<Scalar> dir = b - a;
  const Scalar len = dir.norm();
  std::vector<VecN<Scalar>> out;
  if (len == 0) return out;
  const VecN<Scalar> u = dir / len;
  const VecN<Scalar> w = a - ball.center;
  // |w + t u|^2 = r^2 with t the arc length along the segment
  const Scalar half_b = w.dot(u);
  const Scalar c = w.squaredNorm() - ball.radius * ball.radius;
  const Scalar disc = half_b * half_b - c;
  const Scalar eps = Scalar(kGeomEps) * std::max<Scalar>(1, ball.radius);
  const Scalar t_eps = Scalar(kGeomEps) * std::max<Scalar>(1, len);
  if (disc < -eps * std::max<Scalar>(1, ball.radius)) return out;
  using std::sqrt;
  const Scalar root = sqrt(std::max<Scalar>(0, disc));
  std::vector<Scalar> ts;
  if (root <= eps) {
    ts.push_back(-half_b);
  } else {
    ts.push_back(-half_b - root);
    ts.push_back(-half_b + root);
  }
  for (Scalar t : ts) {
    if (t >= -t_eps && t <= len + t_eps) out.push_back(a + std::clamp<Scalar>(t, 0, len) * u);
  }
  return out;
}

}  // namespace locus

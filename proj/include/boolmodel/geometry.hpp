#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace boolmodel {

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline Vec2 rotate(Vec2 v, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}
/// Outward normal of a counterclockwise edge a -> b.
inline Vec2 outward_normal(Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double l = norm(d);
  return {d.y / l, -d.x / l};
}

/// Planar intrinsic volumes: Euler characteristic, half perimeter, area.
///
/// V1 is half the perimeter, which is what the Steiner expansion
/// A(K + rB) = V2 + 2 r V1 + pi r^2 forces in the plane.
struct IntrinsicVolumes2D {
  double v0 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct Disk {
  double radius;
};

struct AlignedRect {
  double halfwidth;
  double halfheight;
};

/// Strictly convex polygon, counterclockwise, circumcenter at the origin.
class ConvexPolygon {
public:
  /// Validates, orients counterclockwise and re-centers on the
  /// smallest enclosing circle. Throws PreconditionError.
  static ConvexPolygon from_vertices(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
  const Vec2& next(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  double area() const;
  double perimeter() const;

private:
  explicit ConvexPolygon(std::vector<Vec2> v) : vertices_(std::move(v)) {}
  friend class GrainShape;
  std::vector<Vec2> vertices_;
};

/// Value type for a convex grain in the plane. Always valid once built.
class GrainShape {
public:
  using Variant = std::variant<Disk, AlignedRect, ConvexPolygon>;

  static GrainShape disk(double radius);
  static GrainShape rect(double halfwidth, double halfheight);
  static GrainShape polygon(std::vector<Vec2> vertices);
  static GrainShape polygon(ConvexPolygon poly) { return GrainShape(std::move(poly)); }

  const Variant& variant() const { return shape_; }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  bool is_rect() const { return std::holds_alternative<AlignedRect>(shape_); }
  bool is_polygon() const { return std::holds_alternative<ConvexPolygon>(shape_); }
  const Disk& as_disk() const { return std::get<Disk>(shape_); }
  const AlignedRect& as_rect() const { return std::get<AlignedRect>(shape_); }

  /// Polygon view of a rect or polygon; throws for disks.
  ConvexPolygon to_polygon() const;
  /// Rotation about the circumcenter; rectangles become polygons.
  GrainShape rotated(double angle) const;
  /// Point reflection K* = -K.
  GrainShape reflected() const;
  /// Centrally symmetric about the origin.
  bool centrally_symmetric() const;
  /// Closed membership test of a point in shape coordinates.
  bool contains(Vec2 p, double eps = 0.0) const;

  std::string kind() const;

private:
  explicit GrainShape(Variant v) : shape_(std::move(v)) {}
  Variant shape_;
};

IntrinsicVolumes2D intrinsic_volumes(const GrainShape& shape);
/// A(K + rB) = v2 + 2 r v1 + pi r^2.
double steiner_area(const GrainShape& shape, double r);
/// Area of the lens between two disks of radius r at distance d.
double disk_lens_area(double r, double d);
/// Area of K intersected with K + t.
double covariogram(const GrainShape& shape, Vec2 t);
/// Half the length of the boundary of K that lies in the open interior of K + t.
double boundary_covariogram(const GrainShape& shape, Vec2 t);
/// Area of K + probe*, with probe* = -probe.
double minkowski_sum_area(const GrainShape& shape, const GrainShape& probe);
/// Area of the mixed-area term, A(K + M) - A(K) - A(M), for M taken as given.
double mixed_area_term(const GrainShape& k, const GrainShape& m);
double circumradius(const GrainShape& shape);

/// Smallest enclosing circle of a point set (Welzl, randomized-order free).
struct Circle {
  Vec2 center;
  double radius;
};
Circle smallest_enclosing_circle(const std::vector<Vec2>& points);

/// Area of the intersection of two convex counterclockwise polygons.
double convex_polygon_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
/// Sutherland-Hodgman clip of a convex polygon by another convex polygon.
std::vector<Vec2> clip_convex_polygon(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip);
double polygon_area(const std::vector<Vec2>& v);
/// Minkowski sum of two convex counterclockwise polygons by edge merging.
std::vector<Vec2> minkowski_sum_polygon(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace boolmodel

#include "boolmodel/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace boolmodel {

namespace {

bool in_circle(const Circle& c, Vec2 p) {
  return norm(p - c.center) <= c.radius * (1.0 + 1e-12) + 1e-15;
}

Circle circle_from_two(Vec2 a, Vec2 b) {
  const Vec2 c = (a + b) * 0.5;
  return {c, norm(a - c)};
}

Circle circle_from_three(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (std::abs(d) < 1e-300) {
    // Collinear: the widest pair spans the circle.
    Circle best = circle_from_two(a, b);
    for (auto cand : {circle_from_two(a, c), circle_from_two(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
  const Vec2 off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + off, norm(off)};
}

double turning_total(const std::vector<Vec2>& v) {
  double total = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    total += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  return total;
}

}  // namespace

Circle smallest_enclosing_circle(const std::vector<Vec2>& pts) {
  if (pts.empty()) return {{0.0, 0.0}, 0.0};
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (in_circle(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (in_circle(c, pts[j])) continue;
      c = circle_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (in_circle(c, pts[k])) continue;
        c = circle_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

double polygon_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Vec2> v) {
  if (v.size() < 3) throw PreconditionError("polygon needs at least 3 vertices");
  for (const auto& p : v)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw PreconditionError("polygon vertex is not finite");
  if (polygon_area(v) < 0.0) std::reverse(v.begin(), v.end());
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
  for (const auto& p : v) scale = std::max(scale, norm(p - v[0]));
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (norm(e0) <= 1e-12 * scale)
      throw PreconditionError("polygon has repeated vertices");
    if (cross(e0, e1) <= 1e-12 * scale * scale)
      throw PreconditionError("polygon is not strictly convex (collinear or reflex vertex)");
  }
  if (std::abs(turning_total(v) - 2.0 * kPi) > 1e-6)
    throw PreconditionError("polygon is self-intersecting");
  const Circle c = smallest_enclosing_circle(v);
  for (auto& p : v) p = p - c.center;
  return ConvexPolygon(std::move(v));
}

double ConvexPolygon::area() const { return polygon_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < size(); ++i) p += norm(next(i) - vertices_[i]);
  return p;
}

GrainShape GrainShape::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw PreconditionError("disk radius must be positive and finite");
  return GrainShape(Disk{radius});
}

GrainShape GrainShape::rect(double hw, double hh) {
  if (!(hw > 0.0) || !(hh > 0.0) || !std::isfinite(hw) || !std::isfinite(hh))
    throw PreconditionError("rectangle half sides must be positive and finite");
  return GrainShape(AlignedRect{hw, hh});
}

GrainShape GrainShape::polygon(std::vector<Vec2> vertices) {
  return GrainShape(ConvexPolygon::from_vertices(std::move(vertices)));
}

ConvexPolygon GrainShape::to_polygon() const {
  if (const auto* r = std::get_if<AlignedRect>(&shape_)) {
    const double w = r->halfwidth, h = r->halfheight;
    return ConvexPolygon({{-w, -h}, {w, -h}, {w, h}, {-w, h}});
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) return *p;
  throw PreconditionError("disk has no polygon representation");
}

GrainShape GrainShape::rotated(double angle) const {
  if (is_disk()) return *this;
  auto verts = to_polygon().vertices();
  for (auto& p : verts) p = rotate(p, angle);
  return GrainShape(ConvexPolygon(std::move(verts)));
}

GrainShape GrainShape::reflected() const {
  if (is_disk() || is_rect()) return *this;
  auto verts = std::get<ConvexPolygon>(shape_).vertices();
  for (auto& p : verts) p = -p;
  return GrainShape(ConvexPolygon(std::move(verts)));
}

bool GrainShape::centrally_symmetric() const {
  if (is_disk() || is_rect()) return true;
  const auto& v = std::get<ConvexPolygon>(shape_).vertices();
  if (v.size() % 2 != 0) return false;
  const std::size_t h = v.size() / 2;
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, norm(p));
  for (std::size_t i = 0; i < h; ++i)
    if (norm(v[i] + v[i + h]) > 1e-12 * scale) return false;
  return true;
}

bool GrainShape::contains(Vec2 p, double eps) const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return norm(p) <= d->radius + eps;
  if (const auto* r = std::get_if<AlignedRect>(&shape_))
    return std::abs(p.x) <= r->halfwidth + eps && std::abs(p.y) <= r->halfheight + eps;
  const auto& poly = std::get<ConvexPolygon>(shape_);
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (dot(p - poly[i], outward_normal(poly[i], poly.next(i))) > eps) return false;
  return true;
}

std::string GrainShape::kind() const {
  if (is_disk()) return "disk";
  if (is_rect()) return "rect";
  return "polygon";
}

IntrinsicVolumes2D intrinsic_volumes(const GrainShape& shape) {
  if (shape.is_disk()) {
    const double r = shape.as_disk().radius;
    return {1.0, kPi * r, kPi * r * r};
  }
  if (shape.is_rect()) {
    const auto& r = shape.as_rect();
    return {1.0, 2.0 * (r.halfwidth + r.halfheight), 4.0 * r.halfwidth * r.halfheight};
  }
  const auto p = shape.to_polygon();
  return {1.0, 0.5 * p.perimeter(), p.area()};
}

double steiner_area(const GrainShape& shape, double r) {
  if (!(r >= 0.0)) throw PreconditionError("dilation radius must be nonnegative");
  const auto v = intrinsic_volumes(shape);
  return v.v2 + 2.0 * r * v.v1 + kPi * r * r;
}

double circumradius(const GrainShape& shape) {
  if (shape.is_disk()) return shape.as_disk().radius;
  if (shape.is_rect()) return std::hypot(shape.as_rect().halfwidth, shape.as_rect().halfheight);
  double r = 0.0;
  const auto poly = shape.to_polygon();
  for (const auto& p : poly.vertices()) r = std::max(r, norm(p));
  return r;
}

std::vector<Vec2> clip_convex_polygon(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip) {
  std::vector<Vec2> out = subject;
  const std::size_t m = clip.size();
  for (std::size_t e = 0; e < m && !out.empty(); ++e) {
    const Vec2 a = clip[e], b = clip[(e + 1) % m];
    const Vec2 n = outward_normal(a, b);
    std::vector<Vec2> in;
    in.reserve(out.size() + 2);
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 p = out[i], q = out[(i + 1) % k];
      const double dp = dot(p - a, n), dq = dot(q - a, n);
      if (dp <= 0.0) in.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        const double s = dp / (dp - dq);
        in.push_back(p + (q - p) * s);
      }
    }
    out = std::move(in);
  }
  return out;
}

double convex_polygon_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  const auto c = clip_convex_polygon(a, b);
  return c.size() < 3 ? 0.0 : std::max(0.0, polygon_area(c));
}

double disk_lens_area(double r, double d) {
  if (d >= 2.0 * r) return 0.0;
  // 2 r^2 (theta - sin(2 theta) / 2) with theta = acos(d / 2r); series near tangency.
  const double u = 2.0 * std::acos(d / (2.0 * r));
  if (u > 1e-2) return r * r * (u - std::sin(u));
  const double u2 = u * u;
  return r * r * u * u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)));
}

double covariogram(const GrainShape& shape, Vec2 t) {
  if (shape.is_disk()) return disk_lens_area(shape.as_disk().radius, norm(t));
  if (shape.is_rect()) {
    const auto& r = shape.as_rect();
    return std::max(0.0, 2.0 * r.halfwidth - std::abs(t.x)) *
           std::max(0.0, 2.0 * r.halfheight - std::abs(t.y));
  }
  const auto poly = shape.to_polygon();
  const auto& v = poly.vertices();
  std::vector<Vec2> moved(v);
  for (auto& p : moved) p = p + t;
  return convex_polygon_intersection_area(v, moved);
}

namespace {

// Length of segment a-b strictly inside the convex polygon `poly` (ccw).
double segment_length_in_open_polygon(Vec2 a, Vec2 b, const std::vector<Vec2>& poly) {
  double lo = 0.0, hi = 1.0;
  const Vec2 d = b - a;
  const double len = norm(d);
  const std::size_t m = poly.size();
  for (std::size_t e = 0; e < m; ++e) {
    const Vec2 p = poly[e], q = poly[(e + 1) % m];
    const Vec2 n = outward_normal(p, q);
    const double num = dot(a - p, n);
    const double den = dot(d, n);
    if (std::abs(den) <= 1e-14 * len) {
      if (num >= -1e-12 * std::max(1.0, len)) return 0.0;
      continue;
    }
    const double s = -num / den;
    if (den > 0.0)
      hi = std::min(hi, s);
    else
      lo = std::max(lo, s);
    if (lo >= hi) return 0.0;
  }
  return (hi - lo) * len;
}

}  // namespace

double boundary_covariogram(const GrainShape& shape, Vec2 t) {
  if (shape.is_disk()) {
    const double r = shape.as_disk().radius, d = norm(t);
    if (d == 0.0 || d >= 2.0 * r) return 0.0;
    return r * std::acos(d / (2.0 * r));
  }
  if (shape.is_rect()) {
    // Only the two edges facing the shift can lie in the open translate.
    const auto& r = shape.as_rect();
    const double ax = std::abs(t.x), ay = std::abs(t.y);
    const double w = 2.0 * r.halfwidth, h = 2.0 * r.halfheight;
    if (ax >= w || ay >= h) return 0.0;
    return 0.5 * ((ay > 0.0 ? w - ax : 0.0) + (ax > 0.0 ? h - ay : 0.0));
  }
  const auto poly = shape.to_polygon();
  const auto& v = poly.vertices();
  std::vector<Vec2> moved(v);
  for (auto& p : moved) p = p + t;
  double len = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    len += segment_length_in_open_polygon(v[i], v[(i + 1) % v.size()], moved);
  return 0.5 * len;
}

std::vector<Vec2> minkowski_sum_polygon(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  auto lowest = [](const std::vector<Vec2>& p) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p[i].y < p[k].y || (p[i].y == p[k].y && p[i].x < p[k].x)) k = i;
    return k;
  };
  const std::size_t n = a.size(), m = b.size();
  const std::size_t ia = lowest(a), ib = lowest(b);
  std::vector<Vec2> out;
  out.reserve(n + m);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    out.push_back(a[(ia + i) % n] + b[(ib + j) % m]);
    const Vec2 ea = a[(ia + i + 1) % n] - a[(ia + i) % n];
    const Vec2 eb = b[(ib + j + 1) % m] - b[(ib + j) % m];
    const double c = cross(ea, eb);
    if (j >= m || (i < n && c > 0.0))
      ++i;
    else if (i >= n || c < 0.0)
      ++j;
    else {
      ++i;
      ++j;
    }
  }
  return out;
}

double minkowski_sum_area(const GrainShape& shape, const GrainShape& probe) {
  const GrainShape reflected = probe.reflected();
  if (shape.is_disk() && reflected.is_disk()) {
    const double r = shape.as_disk().radius + reflected.as_disk().radius;
    return kPi * r * r;
  }
  if (shape.is_disk()) return steiner_area(reflected, shape.as_disk().radius);
  if (reflected.is_disk()) return steiner_area(shape, reflected.as_disk().radius);
  if (shape.is_rect() && reflected.is_rect()) {
    const auto& a = shape.as_rect();
    const auto& b = reflected.as_rect();
    return 4.0 * (a.halfwidth + b.halfwidth) * (a.halfheight + b.halfheight);
  }
  return polygon_area(minkowski_sum_polygon(shape.to_polygon().vertices(),
                                            reflected.to_polygon().vertices()));
}

double mixed_area_term(const GrainShape& k, const GrainShape& m) {
  return minkowski_sum_area(k, m.reflected()) - intrinsic_volumes(k).v2 - intrinsic_volumes(m).v2;
}

}  // namespace boolmodel

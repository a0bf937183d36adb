#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boolmodel/curves.hpp"
#include "boolmodel/geometry.hpp"

namespace boolmodel {

/// (V0, V1, V2) of a polyconvex set: Euler characteristic, half perimeter, area.
using FunctionalVector = IntrinsicVolumes2D;

inline FunctionalVector operator+(FunctionalVector a, FunctionalVector b) {
  return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2};
}
inline FunctionalVector operator-(FunctionalVector a, FunctionalVector b) {
  return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2};
}
inline FunctionalVector operator*(double s, FunctionalVector a) {
  return {s * a.v0, s * a.v1, s * a.v2};
}
inline double component(const FunctionalVector& f, int j) {
  return j == 0 ? f.v0 : (j == 1 ? f.v1 : f.v2);
}

struct PlacedGrain {
  Vec2 center;
  GrainShape shape;
};

/// Axis-aligned observation window.
struct Window {
  Vec2 lo;
  Vec2 hi;

  static Window make(Vec2 lo, Vec2 hi);
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return (lo + hi) * 0.5; }
  bool contains(Vec2 p, double eps = 0.0) const {
    return p.x >= lo.x - eps && p.x <= hi.x + eps && p.y >= lo.y - eps && p.y <= hi.y + eps;
  }
  Window scaled(double r) const { return {lo * r, hi * r}; }
  Window translated(Vec2 t) const { return {lo + t, hi + t}; }
  IntrinsicVolumes2D volumes() const { return {1.0, width() + height(), area()}; }
};

/// A closed convex region in world coordinates (placed grain or window).
class ConvexRegion {
public:
  static ConvexRegion from_grain(const PlacedGrain& g);
  static ConvexRegion from_window(const Window& w);

  bool is_disk() const { return is_disk_; }
  Vec2 center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Vec2>& normals() const { return normals_; }

  /// Signed distance-like value: negative inside, positive outside.
  /// Exact Euclidean distance for disks, max over edge lines for polygons.
  double signed_gap(Vec2 p) const;
  bool contains(Vec2 p, double eps = 0.0) const { return signed_gap(p) <= eps; }
  /// Boundary as counterclockwise pieces.
  std::vector<CurvePiece> boundary() const;
  /// Crossing parameters of a piece with this region's boundary curves
  /// (edge lines for polygons, a superset of true crossings).
  void crossings(const CurvePiece& p, std::vector<double>& out) const;
  /// Outward normals of the region at a boundary point (within eps).
  void normal_generators(Vec2 p, double eps, std::vector<Vec2>& out) const;
  /// Point of the region minimizing <x, u>.
  Vec2 lowest_point(Vec2 u) const;
  /// Bounding circle radius about center().
  double bounding_radius() const { return bound_; }

private:
  bool is_disk_ = false;
  Vec2 center_{};
  double radius_ = 0.0;
  double bound_ = 0.0;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> normals_;
};

/// Convex intersection cell bounded by segments and circular arcs.
class ConvexCell {
public:
  static ConvexCell from_region(const ConvexRegion& r);

  bool empty() const { return edges_.empty(); }
  const std::vector<CurvePiece>& edges() const { return edges_; }
  /// In-place intersection with another convex region.
  void clip(const ConvexRegion& r);
  FunctionalVector volumes() const;
  bool contains(Vec2 p, double eps = 0.0) const;

private:
  void clip_halfplane(Vec2 q, Vec2 n);
  void clip_disk(Vec2 c, double r);
  std::vector<CurvePiece> edges_;
  std::vector<ConvexRegion> constraints_;
};

inline constexpr std::size_t kDefaultIntersectCap = 20;
inline constexpr std::size_t kMaxInclusionExclusionGrains = 18;

/// Exact intersection of the listed grains, optionally with a window.
ConvexCell intersect_convex(std::span<const PlacedGrain> grains, const Window* window,
                            std::size_t cap = kDefaultIntersectCap);

/// Exponential-time oracle: additive extension by inclusion-exclusion over
/// grains hitting the window.
FunctionalVector inclusion_exclusion_measure(std::span<const PlacedGrain> grains, const Window& window);

/// Quantities produced by the arrangement engine.
struct UnionStatistics {
  /// (V0, V1, V2) of Z intersected with the window.
  FunctionalVector clipped;
  /// Length of the boundary of Z lying inside the window.
  double interior_boundary_length = 0.0;
  /// Signed count of lower tangent points of Z inside the window.
  double interior_euler_count = 0.0;
  /// Edge-corrected functionals: (tangent count, half interior boundary, area).
  FunctionalVector interior() const {
    return {interior_euler_count, 0.5 * interior_boundary_length, clipped.v2};
  }
};

/// Polynomial-time exact engine for the union of grains clipped to the window.
UnionStatistics arrangement_statistics(std::span<const PlacedGrain> grains, const Window& window);
FunctionalVector arrangement_measure(std::span<const PlacedGrain> grains, const Window& window);

/// Binary raster of the union restricted to the window; row 0 is the top row.
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  double pixel = 0.0;
  std::vector<std::uint8_t> cells;  // 1 = occupied
  bool at(std::size_t col, std::size_t row) const { return cells[row * width + col] != 0; }
};

Raster rasterize(std::span<const PlacedGrain> grains, const Window& window, double resolution);
/// Counts of the 16 binary 2x2 configurations of the zero-padded raster.
std::array<std::uint64_t, 16> configuration_counts(const Raster& raster);
/// Approximate (V0, V1, V2) from 2x2 configuration counts.
///
/// V2 is the pixel count. V0 uses 8-connectivity for the foreground.
/// V1 is a four-direction Crofton estimate with weights pi/8 per unit of
/// line spacing. It is unbiased for isotropic boundaries; an axis-aligned
/// square reads about 5% short.
FunctionalVector pixel_measure(std::span<const PlacedGrain> grains, const Window& window, double resolution);
FunctionalVector functionals_from_configurations(const std::array<std::uint64_t, 16>& counts, double pixel);

/// Binary PGM (P5, maxval 255, occupied = 255).
std::string to_pgm(const Raster& raster);

}  // namespace boolmodel

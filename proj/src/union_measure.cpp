#include "boolmodel/union_measure.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <sstream>

namespace boolmodel {

namespace {

// Coordinate tolerance for identifying arrangement vertices and boundary contacts.
constexpr double kCoordEps = 1e-9;
constexpr double kTinyLength = 1e-13;

// Generic lower-tangent direction: the Euler characteristic is counted at
// points whose outward normal cone contains -u. The angle only needs to
// avoid the (measure zero) edge directions of the grains and the window.
const Vec2 kSweepDown = unit_from_angle(-0.5 * kPi + 0.3183098861837907);

PlacedGrain shifted(const PlacedGrain& g, Vec2 t) { return {g.center + t, g.shape}; }

// Clip walk shared by the half-plane and disk cases of ConvexCell.
// Returns 0 when the whole boundary is inside, 1 when modified, 2 when
// no part of the boundary is inside.
template <class Cross, class Inside, class Connect>
int clip_walk(std::vector<CurvePiece>& edges, Cross cross, Inside inside, Connect connect) {
  struct Part {
    CurvePiece piece;
    bool inside;
  };
  std::vector<Part> parts;
  std::vector<double> params;
  bool any_in = false, any_out = false;
  for (const auto& e : edges) {
    params.clear();
    cross(e, params);
    std::sort(params.begin(), params.end());
    params.push_back(1.0);
    double prev = 0.0;
    for (double s : params) {
      if (s <= prev) continue;
      CurvePiece sub = (prev == 0.0 && s == 1.0) ? e : e.sub(prev, s);
      const bool in = inside(e.at(0.5 * (prev + s)));
      prev = s;
      if (sub.length() <= kTinyLength) continue;
      parts.push_back({sub, in});
      (in ? any_in : any_out) = true;
    }
  }
  if (!any_out) return 0;
  if (!any_in) return 2;
  const std::size_t n = parts.size();
  std::size_t k = 0;
  while (!(parts[k].inside && !parts[(k + n - 1) % n].inside)) ++k;
  std::vector<CurvePiece> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = (k + i) % n;
    if (!parts[idx].inside) continue;
    out.push_back(parts[idx].piece);
    if (parts[(idx + 1) % n].inside) continue;
    std::size_t j = (idx + 1) % n;
    while (!parts[j].inside) j = (j + 1) % n;
    connect(parts[idx].piece.to, parts[j].piece.from, out);
  }
  edges = std::move(out);
  return 1;
}

}  // namespace

Window Window::make(Vec2 lo, Vec2 hi) {
  if (!(lo.x < hi.x) || !(lo.y < hi.y) || !std::isfinite(lo.x) || !std::isfinite(lo.y) ||
      !std::isfinite(hi.x) || !std::isfinite(hi.y))
    throw PreconditionError("window requires lo < hi componentwise");
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// ConvexRegion

ConvexRegion ConvexRegion::from_grain(const PlacedGrain& g) {
  ConvexRegion r;
  r.center_ = g.center;
  if (g.shape.is_disk()) {
    r.is_disk_ = true;
    r.radius_ = g.shape.as_disk().radius;
    r.bound_ = r.radius_;
    return r;
  }
  const auto poly = g.shape.to_polygon();
  r.vertices_.reserve(poly.size());
  for (const auto& v : poly.vertices()) {
    r.vertices_.push_back(v + g.center);
    r.bound_ = std::max(r.bound_, norm(v));
  }
  for (std::size_t i = 0; i < poly.size(); ++i)
    r.normals_.push_back(outward_normal(poly[i], poly.next(i)));
  return r;
}

ConvexRegion ConvexRegion::from_window(const Window& w) {
  ConvexRegion r;
  r.center_ = w.center();
  r.vertices_ = {w.lo, {w.hi.x, w.lo.y}, w.hi, {w.lo.x, w.hi.y}};
  r.normals_ = {{0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
  r.bound_ = 0.5 * std::hypot(w.width(), w.height());
  return r;
}

double ConvexRegion::signed_gap(Vec2 p) const {
  if (is_disk_) return norm(p - center_) - radius_;
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) g = std::max(g, dot(p - vertices_[i], normals_[i]));
  return g;
}

std::vector<CurvePiece> ConvexRegion::boundary() const {
  if (is_disk_) return {CurvePiece::circle(center_, radius_)};
  std::vector<CurvePiece> out;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(CurvePiece::segment(vertices_[i], vertices_[(i + 1) % n]));
  return out;
}

void ConvexRegion::crossings(const CurvePiece& p, std::vector<double>& out) const {
  if (is_disk_) {
    crossings_with_circle(p, center_, radius_, out);
    return;
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) crossings_with_line(p, vertices_[i], normals_[i], out);
}

void ConvexRegion::normal_generators(Vec2 p, double eps, std::vector<Vec2>& out) const {
  if (is_disk_) {
    const Vec2 d = p - center_;
    const double l = norm(d);
    if (std::abs(l - radius_) <= eps && l > 0.0) out.push_back(d / l);
    return;
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (std::abs(dot(p - vertices_[i], normals_[i])) <= eps) out.push_back(normals_[i]);
}

Vec2 ConvexRegion::lowest_point(Vec2 u) const {
  if (is_disk_) return center_ - radius_ * u;
  std::size_t k = 0;
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (dot(vertices_[i], u) < dot(vertices_[k], u)) k = i;
  return vertices_[k];
}

// ---------------------------------------------------------------------------
// ConvexCell: sequential clipping engine

ConvexCell ConvexCell::from_region(const ConvexRegion& r) {
  ConvexCell c;
  c.edges_ = r.boundary();
  c.constraints_.push_back(r);
  return c;
}

bool ConvexCell::contains(Vec2 p, double eps) const {
  for (const auto& c : constraints_)
    if (!c.contains(p, eps)) return false;
  return true;
}

void ConvexCell::clip_halfplane(Vec2 q, Vec2 n) {
  const int status = clip_walk(
      edges_, [&](const CurvePiece& e, std::vector<double>& out) { crossings_with_line(e, q, n, out); },
      [&](Vec2 p) { return dot(p - q, n) <= 0.0; },
      [](Vec2 a, Vec2 b, std::vector<CurvePiece>& out) {
        if (norm(b - a) > kTinyLength) out.push_back(CurvePiece::segment(a, b));
      });
  if (status == 2) edges_.clear();
}

void ConvexCell::clip_disk(Vec2 c, double r) {
  const int status = clip_walk(
      edges_, [&](const CurvePiece& e, std::vector<double>& out) { crossings_with_circle(e, c, r, out); },
      [&](Vec2 p) { return norm(p - c) <= r; },
      [&](Vec2 a, Vec2 b, std::vector<CurvePiece>& out) {
        const double a0 = std::atan2(a.y - c.y, a.x - c.x);
        const double a1 = std::atan2(b.y - c.y, b.x - c.x);
        const double sweep = wrap_angle(a1 - a0);
        if (sweep * r > kTinyLength) out.push_back(CurvePiece::arc(c, r, a0, sweep));
      });
  if (status == 2) {
    // The circle lies either entirely inside the cell or entirely outside.
    if (contains(c + Vec2{r, 0.0}) && contains(c - Vec2{r, 0.0}))
      edges_ = {CurvePiece::circle(c, r)};
    else
      edges_.clear();
  }
}

void ConvexCell::clip(const ConvexRegion& r) {
  if (empty()) return;
  if (r.is_disk()) {
    clip_disk(r.center(), r.radius());
  } else {
    for (std::size_t i = 0; i < r.vertices().size() && !empty(); ++i)
      clip_halfplane(r.vertices()[i], r.normals()[i]);
  }
  constraints_.push_back(r);
}

FunctionalVector ConvexCell::volumes() const {
  if (empty()) return {};
  double len = 0.0, area = 0.0;
  for (const auto& e : edges_) {
    len += e.length();
    area += e.green();
  }
  return {1.0, 0.5 * len, area};
}

ConvexCell intersect_convex(std::span<const PlacedGrain> grains, const Window* window, std::size_t cap) {
  const std::size_t count = grains.size() + (window ? 1 : 0);
  if (count == 0) throw PreconditionError("intersect_convex needs at least one body");
  if (count > cap)
    throw PreconditionError("intersect_convex: " + std::to_string(count) + " bodies exceed the cap of " +
                            std::to_string(cap));
  std::size_t first = 0;
  ConvexCell cell = window ? ConvexCell::from_region(ConvexRegion::from_window(*window))
                           : ConvexCell::from_region(ConvexRegion::from_grain(grains[first++]));
  for (std::size_t i = first; i < grains.size() && !cell.empty(); ++i)
    cell.clip(ConvexRegion::from_grain(grains[i]));
  return cell;
}

FunctionalVector inclusion_exclusion_measure(std::span<const PlacedGrain> grains, const Window& window) {
  const Vec2 shift = -window.center();
  const Window w = window.translated(shift);
  const ConvexCell base = ConvexCell::from_region(ConvexRegion::from_window(w));
  std::vector<ConvexRegion> hitting;
  for (const auto& g : grains) {
    const auto region = ConvexRegion::from_grain(shifted(g, shift));
    ConvexCell c = base;
    c.clip(region);
    if (!c.empty()) hitting.push_back(region);
  }
  if (hitting.size() > kMaxInclusionExclusionGrains)
    throw PreconditionError("inclusion_exclusion_measure: " + std::to_string(hitting.size()) +
                            " grains hit the window (limit " + std::to_string(kMaxInclusionExclusionGrains) +
                            "); use arrangement_measure");
  FunctionalVector total{};
  // Depth-first over subsets in increasing index order; empty
  // intersections prune all supersets.
  auto recurse = [&](auto&& self, const ConvexCell& cell, std::size_t next, int depth) -> void {
    for (std::size_t j = next; j < hitting.size(); ++j) {
      ConvexCell c = cell;
      c.clip(hitting[j]);
      if (c.empty()) continue;
      const double sign = (depth % 2 == 1) ? 1.0 : -1.0;
      total = total + sign * c.volumes();
      self(self, c, j + 1, depth + 1);
    }
  };
  recurse(recurse, base, 0, 1);
  return total;
}

// ---------------------------------------------------------------------------
// Arrangement engine

namespace {

class GrainGrid {
public:
  GrainGrid(const std::vector<ConvexRegion>& regions) : regions_(regions) {
    if (regions.empty()) return;
    Vec2 lo = regions[0].center(), hi = lo;
    for (const auto& r : regions) {
      lo = {std::min(lo.x, r.center().x), std::min(lo.y, r.center().y)};
      hi = {std::max(hi.x, r.center().x), std::max(hi.y, r.center().y)};
      max_bound_ = std::max(max_bound_, r.bounding_radius());
    }
    cell_ = std::max(2.0 * max_bound_, 1e-6);
    origin_ = lo;
    nx_ = static_cast<long>((hi.x - lo.x) / cell_) + 1;
    ny_ = static_cast<long>((hi.y - lo.y) / cell_) + 1;
    bins_.assign(static_cast<std::size_t>(nx_ * ny_), {});
    for (std::size_t i = 0; i < regions.size(); ++i) bins_[bin(regions[i].center())].push_back(i);
  }

  double max_bound() const { return max_bound_; }

  /// Indices of regions whose bounding circle may meet the disk (p, radius).
  template <class F>
  void visit(Vec2 p, double radius, F&& f) const {
    if (bins_.empty()) return;
    const double reach = radius + max_bound_;
    const long x0 = clamp_x(static_cast<long>(std::floor((p.x - reach - origin_.x) / cell_)));
    const long x1 = clamp_x(static_cast<long>(std::floor((p.x + reach - origin_.x) / cell_)));
    const long y0 = clamp_y(static_cast<long>(std::floor((p.y - reach - origin_.y) / cell_)));
    const long y1 = clamp_y(static_cast<long>(std::floor((p.y + reach - origin_.y) / cell_)));
    for (long y = y0; y <= y1; ++y)
      for (long x = x0; x <= x1; ++x)
        for (std::size_t i : bins_[static_cast<std::size_t>(y * nx_ + x)]) {
          const auto& r = regions_[i];
          if (norm(r.center() - p) <= radius + r.bounding_radius()) f(i);
        }
  }

private:
  long clamp_x(long v) const { return std::clamp(v, 0L, nx_ - 1); }
  long clamp_y(long v) const { return std::clamp(v, 0L, ny_ - 1); }
  std::size_t bin(Vec2 p) const {
    const long x = clamp_x(static_cast<long>((p.x - origin_.x) / cell_));
    const long y = clamp_y(static_cast<long>((p.y - origin_.y) / cell_));
    return static_cast<std::size_t>(y * nx_ + x);
  }

  const std::vector<ConvexRegion>& regions_;
  std::vector<std::vector<std::size_t>> bins_;
  Vec2 origin_{};
  double cell_ = 1.0;
  double max_bound_ = 0.0;
  long nx_ = 0, ny_ = 0;
};

// Is m in the convex cone generated by the unit vectors in gens?
bool cone_contains(const std::vector<Vec2>& gens, Vec2 m) {
  double best_pos = std::numeric_limits<double>::infinity();
  double best_neg = -std::numeric_limits<double>::infinity();
  for (const auto& g : gens) {
    const double phi = std::atan2(cross(m, g), dot(m, g));
    if (std::abs(phi) <= 1e-12) return true;
    if (phi > 0.0)
      best_pos = std::min(best_pos, phi);
    else
      best_neg = std::max(best_neg, phi);
  }
  return std::isfinite(best_pos) && std::isfinite(best_neg) && best_pos - best_neg < kPi;
}

// Sum over nonempty subsets S of the boundary grains at a point of
// (-1)^{|S|-1} [the point is the lowest point of W and the grains in S].
double lowest_point_index(const std::vector<std::vector<Vec2>>& grain_gens, const std::vector<Vec2>& fixed_gens,
                          Vec2 m) {
  const std::size_t n = grain_gens.size();
  if (n == 0) return 0.0;
  if (n > 24) throw std::runtime_error("arrangement: too many grains share one boundary point");
  double total = 0.0;
  std::vector<Vec2> gens;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    gens = fixed_gens;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) gens.insert(gens.end(), grain_gens[i].begin(), grain_gens[i].end());
    if (cone_contains(gens, m)) total += (std::popcount(mask) % 2 == 1) ? 1.0 : -1.0;
  }
  return total;
}

struct Candidate {
  Vec2 x;
  bool interior_kind;  // lowest grain point or grain/grain crossing
};

}  // namespace

UnionStatistics arrangement_statistics(std::span<const PlacedGrain> grains, const Window& window) {
  const Vec2 shift = -window.center();
  const Window w = window.translated(shift);
  const ConvexRegion wreg = ConvexRegion::from_window(w);

  std::vector<ConvexRegion> regions;
  regions.reserve(grains.size());
  for (const auto& g : grains) {
    auto r = ConvexRegion::from_grain(shifted(g, shift));
    const Vec2 c = r.center();
    const double b = r.bounding_radius();
    if (c.x + b < w.lo.x || c.x - b > w.hi.x || c.y + b < w.lo.y || c.y - b > w.hi.y) continue;
    regions.push_back(std::move(r));
  }
  const GrainGrid grid(regions);

  UnionStatistics stats;
  double area = 0.0;
  std::vector<double> params;
  std::vector<std::size_t> nbrs;
  std::vector<Candidate> candidates;
  std::vector<Vec2> points;

  // Uncovered grain boundary inside the window.
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& ri = regions[i];
    nbrs.clear();
    grid.visit(ri.center(), ri.bounding_radius(), [&](std::size_t j) {
      if (j != i) nbrs.push_back(j);
    });
    const auto pieces = ri.boundary();
    for (const auto& piece : pieces) {
      params.clear();
      for (std::size_t j : nbrs) regions[j].crossings(piece, params);
      wreg.crossings(piece, params);
      std::sort(params.begin(), params.end());
      params.push_back(1.0);
      double prev = 0.0;
      for (double s : params) {
        if (s <= prev) continue;
        const Vec2 mid = piece.at(0.5 * (prev + s));
        bool keep = wreg.contains(mid);
        for (std::size_t k = 0; keep && k < nbrs.size(); ++k)
          if (regions[nbrs[k]].contains(mid)) keep = false;
        if (keep) {
          const CurvePiece sub = piece.sub(prev, s);
          stats.interior_boundary_length += sub.length();
          area += sub.green();
        }
        prev = s;
      }
    }

    candidates.push_back({ri.lowest_point(-kSweepDown), true});
    for (std::size_t j : nbrs) {
      if (j < i) continue;
      const auto other = regions[j].boundary();
      for (const auto& a : pieces)
        for (const auto& b : other) {
          points.clear();
          piece_intersections(a, b, points);
          for (const auto& x : points) candidates.push_back({x, true});
        }
    }
    for (const auto& a : pieces)
      for (const auto& b : wreg.boundary()) {
        points.clear();
        piece_intersections(a, b, points);
        for (const auto& x : points) candidates.push_back({x, false});
      }
  }

  // Window boundary covered by grains.
  double window_covered = 0.0;
  for (const auto& edge : wreg.boundary()) {
    std::vector<std::pair<double, double>> covered;
    const Vec2 mid = edge.at(0.5);
    grid.visit(mid, 0.5 * edge.length(), [&](std::size_t j) {
      const auto& rj = regions[j];
      params.clear();
      rj.crossings(edge, params);
      std::sort(params.begin(), params.end());
      params.push_back(1.0);
      double prev = 0.0;
      for (double s : params) {
        if (s > prev && rj.contains(edge.at(0.5 * (prev + s)))) covered.emplace_back(prev, s);
        prev = std::max(prev, s);
      }
    });
    std::sort(covered.begin(), covered.end());
    double run_lo = 0.0, run_hi = -1.0;
    auto flush = [&]() {
      if (run_hi > run_lo) {
        const CurvePiece sub = edge.sub(run_lo, run_hi);
        window_covered += sub.length();
        area += sub.green();
      }
    };
    for (const auto& [a, b] : covered) {
      if (a > run_hi) {
        flush();
        run_lo = a;
        run_hi = b;
      } else {
        run_hi = std::max(run_hi, b);
      }
    }
    flush();
  }
  for (const auto& v : wreg.vertices()) candidates.push_back({v, false});

  // Euler characteristic by lower tangent points.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.x.x < b.x.x; });
  std::vector<bool> merged(candidates.size(), false);
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (merged[a]) continue;
    for (std::size_t b = a + 1; b < candidates.size() && candidates[b].x.x - candidates[a].x.x <= kCoordEps; ++b)
      if (!merged[b] && std::abs(candidates[b].x.y - candidates[a].x.y) <= kCoordEps) {
        merged[b] = true;
        candidates[a].interior_kind = candidates[a].interior_kind || candidates[b].interior_kind;
      }
  }
  double chi_clipped = 0.0, chi_interior = 0.0;
  std::vector<std::vector<Vec2>> grain_gens;
  std::vector<Vec2> window_gens;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (merged[a]) continue;
    const Vec2 x = candidates[a].x;
    const double wgap = wreg.signed_gap(x);
    if (wgap > kCoordEps) continue;
    grain_gens.clear();
    bool buried = false;
    grid.visit(x, 2.0 * kCoordEps, [&](std::size_t j) {
      if (buried) return;
      const double gap = regions[j].signed_gap(x);
      if (gap < -kCoordEps) {
        buried = true;
      } else if (gap <= kCoordEps) {
        grain_gens.emplace_back();
        regions[j].normal_generators(x, kCoordEps, grain_gens.back());
      }
    });
    window_gens.clear();
    wreg.normal_generators(x, kCoordEps, window_gens);
    if (buried) {
      // Terms with and without the covering grain cancel in pairs except
      // for the grain alone, which leaves the window's own lowest point.
      if (!window_gens.empty() && cone_contains(window_gens, kSweepDown)) chi_clipped += 1.0;
      continue;
    }
    if (grain_gens.empty()) continue;
    chi_clipped += lowest_point_index(grain_gens, window_gens, kSweepDown);
    if (candidates[a].interior_kind && wgap < -kCoordEps)
      chi_interior += lowest_point_index(grain_gens, {}, kSweepDown);
  }

  stats.clipped = {chi_clipped, 0.5 * (stats.interior_boundary_length + window_covered), area};
  stats.interior_euler_count = chi_interior;
  return stats;
}

FunctionalVector arrangement_measure(std::span<const PlacedGrain> grains, const Window& window) {
  return arrangement_statistics(grains, window).clipped;
}

// ---------------------------------------------------------------------------
// Raster engine

Raster rasterize(std::span<const PlacedGrain> grains, const Window& window, double resolution) {
  if (!(resolution > 0.0)) throw PreconditionError("raster resolution must be positive");
  Raster r;
  r.pixel = 1.0 / resolution;
  r.width = static_cast<std::size_t>(std::max(1.0, std::ceil(window.width() * resolution - 1e-9)));
  r.height = static_cast<std::size_t>(std::max(1.0, std::ceil(window.height() * resolution - 1e-9)));
  r.cells.assign(r.width * r.height, 0);
  for (const auto& g : grains) {
    const auto reg = ConvexRegion::from_grain(g);
    const double b = reg.bounding_radius();
    const double c0 = (g.center.x - b - window.lo.x) * resolution - 0.5;
    const double c1 = (g.center.x + b - window.lo.x) * resolution - 0.5;
    const double r0 = (window.hi.y - g.center.y - b) * resolution - 0.5;
    const double r1 = (window.hi.y - g.center.y + b) * resolution - 0.5;
    const long col0 = std::max(0L, static_cast<long>(std::floor(c0)));
    const long col1 = std::min(static_cast<long>(r.width) - 1, static_cast<long>(std::ceil(c1)));
    const long row0 = std::max(0L, static_cast<long>(std::floor(r0)));
    const long row1 = std::min(static_cast<long>(r.height) - 1, static_cast<long>(std::ceil(r1)));
    for (long row = row0; row <= row1; ++row)
      for (long col = col0; col <= col1; ++col) {
        const Vec2 p{window.lo.x + (col + 0.5) * r.pixel, window.hi.y - (row + 0.5) * r.pixel};
        if (window.contains(p) && reg.contains(p)) r.cells[static_cast<std::size_t>(row) * r.width + col] = 1;
      }
  }
  return r;
}

std::array<std::uint64_t, 16> configuration_counts(const Raster& raster) {
  std::array<std::uint64_t, 16> counts{};
  const long w = static_cast<long>(raster.width), h = static_cast<long>(raster.height);
  auto px = [&](long col, long row) -> unsigned {
    if (col < 0 || row < 0 || col >= w || row >= h) return 0;
    return raster.at(static_cast<std::size_t>(col), static_cast<std::size_t>(row)) ? 1u : 0u;
  };
  for (long row = -1; row < h; ++row)
    for (long col = -1; col < w; ++col) {
      const unsigned idx = px(col, row) | (px(col + 1, row) << 1) | (px(col, row + 1) << 2) |
                           (px(col + 1, row + 1) << 3);
      ++counts[idx];
    }
  return counts;
}

FunctionalVector functionals_from_configurations(const std::array<std::uint64_t, 16>& counts, double a) {
  double pixels = 0.0, q1 = 0.0, q3 = 0.0, qd = 0.0;
  double horizontal = 0.0, vertical = 0.0, diagonal = 0.0;
  for (unsigned c = 0; c < 16; ++c) {
    const double n = static_cast<double>(counts[c]);
    const int b00 = c & 1, b10 = (c >> 1) & 1, b01 = (c >> 2) & 1, b11 = (c >> 3) & 1;
    const int pop = b00 + b10 + b01 + b11;
    pixels += n * pop / 4.0;
    if (pop == 1) q1 += n;
    if (pop == 3) q3 += n;
    if (c == 0b1001 || c == 0b0110) qd += n;
    // Each horizontal or vertical pixel pair is shared by two blocks.
    horizontal += n * ((b00 != b10) + (b01 != b11)) / 2.0;
    vertical += n * ((b00 != b01) + (b10 != b11)) / 2.0;
    diagonal += n * ((b00 != b11) + (b10 != b01));
  }
  const double chi = (q1 - q3 - 2.0 * qd) / 4.0;
  const double perimeter = kPi / 8.0 * (a * (horizontal + vertical) + a / std::sqrt(2.0) * diagonal);
  return {chi, 0.5 * perimeter, pixels * a * a};
}

FunctionalVector pixel_measure(std::span<const PlacedGrain> grains, const Window& window, double resolution) {
  const Raster r = rasterize(grains, window, resolution);
  return functionals_from_configurations(configuration_counts(r), r.pixel);
}

std::string to_pgm(const Raster& raster) {
  std::ostringstream os;
  os << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  std::string header = os.str();
  std::string out = header;
  out.reserve(header.size() + raster.cells.size());
  for (auto c : raster.cells) out.push_back(c ? static_cast<char>(255) : static_cast<char>(0));
  return out;
}

}  // namespace boolmodel

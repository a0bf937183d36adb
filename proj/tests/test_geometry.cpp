#include <gtest/gtest.h>

#include <random>

#include "boolmodel/geometry.hpp"

using namespace boolmodel;

namespace {

double lens_area(double r, double d) {
  if (d >= 2 * r) return 0.0;
  return 2 * r * r * std::acos(d / (2 * r)) - 0.5 * d * std::sqrt(4 * r * r - d * d);
}

GrainShape triangle() { return GrainShape::polygon({{0, 0}, {1, 0}, {0, 1}}); }

std::vector<GrainShape> shape_zoo() {
  return {GrainShape::disk(1.0),     GrainShape::disk(0.37),
          GrainShape::rect(0.5, 0.5), GrainShape::rect(1.2, 0.3),
          triangle(),                GrainShape::polygon({{0, 0}, {2, 0}, {2.5, 1}, {1, 2}, {-0.3, 1}})};
}

}  // namespace

TEST(IntrinsicVolumes, Examples) {
  auto sq = intrinsic_volumes(GrainShape::rect(0.5, 0.5));
  EXPECT_DOUBLE_EQ(sq.v0, 1.0);
  EXPECT_DOUBLE_EQ(sq.v1, 2.0);
  EXPECT_DOUBLE_EQ(sq.v2, 1.0);
  auto d = intrinsic_volumes(GrainShape::disk(1.0));
  EXPECT_DOUBLE_EQ(d.v1, kPi);
  EXPECT_DOUBLE_EQ(d.v2, kPi);
  auto t = intrinsic_volumes(triangle());
  EXPECT_NEAR(t.v1, (2 + std::sqrt(2.0)) / 2, 1e-14);
  EXPECT_NEAR(t.v2, 0.5, 1e-14);
}

TEST(Construction, RejectsDegenerateInput) {
  EXPECT_THROW(GrainShape::disk(0.0), PreconditionError);
  EXPECT_THROW(GrainShape::disk(-1.0), PreconditionError);
  EXPECT_THROW(GrainShape::rect(1.0, 0.0), PreconditionError);
  EXPECT_THROW(GrainShape::polygon({{0, 0}, {1, 0}, {2, 0}}), PreconditionError);
  EXPECT_THROW(GrainShape::polygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), PreconditionError);
  EXPECT_THROW(GrainShape::polygon({{0, 0}, {1, 0}}), PreconditionError);
  // Non-convex quadrilateral.
  EXPECT_THROW(GrainShape::polygon({{0, 0}, {2, 0}, {0.5, 0.5}, {0, 2}}), PreconditionError);
}

TEST(Construction, PolygonIsRecenteredAndCounterclockwise) {
  auto p = GrainShape::polygon({{0, 0}, {0, 1}, {1, 0}}).to_polygon();
  EXPECT_GT(p.area(), 0.0);
  // Right triangle: circumcenter is the hypotenuse midpoint.
  for (const auto& v : p.vertices()) EXPECT_NEAR(norm(v), std::sqrt(2.0) / 2, 1e-14);
}

TEST(Steiner, Examples) {
  EXPECT_DOUBLE_EQ(steiner_area(GrainShape::rect(0.5, 0.5), 0.0), 1.0);
  EXPECT_NEAR(steiner_area(GrainShape::rect(0.5, 0.5), 1.0), 5.0 + kPi, 1e-14);
  EXPECT_NEAR(steiner_area(GrainShape::disk(1.0), 1.0), 4 * kPi, 1e-14);
  EXPECT_THROW(steiner_area(GrainShape::disk(1.0), -0.1), PreconditionError);
}

TEST(Steiner, MatchesDilatedDiskAndMinkowskiSum) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double R = u(rng);
    for (int j = 0; j < 10; ++j) {
      const double r = u(rng);
      const double exact = kPi * (R + r) * (R + r);
      EXPECT_NEAR(steiner_area(GrainShape::disk(R), r), exact, 1e-12 * exact);
    }
  }
  // Polygon dilated by a disk equals the Minkowski sum with that disk.
  for (const auto& s : shape_zoo()) {
    const double r = u(rng);
    const double a = minkowski_sum_area(s, GrainShape::disk(r));
    EXPECT_NEAR(steiner_area(s, r), a, 1e-12 * a);
  }
}

TEST(Covariogram, DiskExamples) {
  const auto d = GrainShape::disk(1.0);
  EXPECT_NEAR(covariogram(d, {0, 0}), kPi, 1e-14);
  EXPECT_EQ(covariogram(d, {2, 0}), 0.0);
  EXPECT_NEAR(covariogram(d, {0.6, 0.8}), 2 * std::acos(0.5) - 0.5 * std::sqrt(3.0), 1e-14);
}

TEST(Covariogram, DiskLensAgreesWithPointSampling) {
  // Monte Carlo over the bounding box of the lens.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-0.5, 1.5), uy(-1.0, 1.0);
  const int n = 400000;
  int hit = 0;
  for (int i = 0; i < n; ++i) {
    const double x = ux(rng), y = uy(rng);
    if (x * x + y * y <= 1 && (x - 1) * (x - 1) + y * y <= 1) ++hit;
  }
  const double p = double(hit) / n;
  const double est = 4.0 * p;
  const double se = 4.0 * std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(covariogram(GrainShape::disk(1.0), {1, 0}), est, 4 * se);
}

TEST(Covariogram, PolygonClippingMatchesClosedForms) {
  // A square as a polygon must reproduce the rect product formula.
  const auto sq = GrainShape::rect(0.7, 0.4);
  const auto sq_poly = sq.rotated(0.0);
  ASSERT_TRUE(sq_poly.is_polygon());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  for (int i = 0; i < 200; ++i) {
    const Vec2 t{u(rng), u(rng)};
    const double exact = std::max(0.0, 1.4 - std::abs(t.x)) * std::max(0.0, 0.8 - std::abs(t.y));
    EXPECT_NEAR(covariogram(sq, t), exact, 1e-12);
    EXPECT_NEAR(covariogram(sq_poly, t), exact, 1e-12);
  }
}

TEST(Covariogram, SymmetrySupportMonotonicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& s : shape_zoo()) {
    const double v2 = intrinsic_volumes(s).v2;
    const double cr = circumradius(s);
    for (int i = 0; i < 300; ++i) {
      const Vec2 t{u(rng) * cr / 2, u(rng) * cr / 2};
      const double c = covariogram(s, t);
      EXPECT_NEAR(c, covariogram(s, -t), 1e-12 * v2);
      if (norm(t) >= 2 * cr) EXPECT_EQ(c, 0.0);
      if (norm(t) > 0) EXPECT_LT(c, v2);
      EXPECT_GE(c, 0.0);
    }
    EXPECT_NEAR(covariogram(s, {0, 0}), v2, 1e-13);
  }
}

TEST(BoundaryCovariogram, DiskExamples) {
  const auto d = GrainShape::disk(1.0);
  EXPECT_NEAR(boundary_covariogram(d, {0.5, std::sqrt(0.75)}), kPi / 3, 1e-14);
  EXPECT_EQ(boundary_covariogram(d, {2, 0}), 0.0);
  EXPECT_EQ(boundary_covariogram(d, {3, 0}), 0.0);
  // The boundary of K is never in the open interior of K itself.
  EXPECT_EQ(boundary_covariogram(d, {0, 0}), 0.0);
  // Right limit at the origin is half the whole boundary, halved.
  EXPECT_NEAR(boundary_covariogram(d, {1e-9, 0}), kPi / 2, 1e-8);
}

TEST(BoundaryCovariogram, AgreesWithDiscretizedBoundary) {
  // Discretize the boundary densely and test each midpoint against the
  // open interior of the translate.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& s : shape_zoo()) {
    std::vector<Vec2> pts;
    double total_len = 0.0;
    std::vector<double> lens;
    const int m = 20000;
    if (s.is_disk()) {
      const double r = s.as_disk().radius;
      for (int k = 0; k < m; ++k) {
        pts.push_back(r * unit_from_angle(2 * kPi * (k + 0.5) / m));
        lens.push_back(2 * kPi * r / m);
      }
    } else {
      const auto p = s.to_polygon();
      for (std::size_t e = 0; e < p.size(); ++e) {
        const Vec2 a = p[e], b = p.next(e);
        for (int k = 0; k < m / 4; ++k) {
          pts.push_back(a + (b - a) * ((k + 0.5) / (m / 4)));
          lens.push_back(norm(b - a) / (m / 4));
        }
      }
    }
    for (double l : lens) total_len += l;
    const double cr = circumradius(s);
    for (int i = 0; i < 10; ++i) {
      const Vec2 t{u(rng) * cr, u(rng) * cr};
      double inside = 0.0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Vec2 q = pts[k] - t;
        if (s.contains(q, -1e-12)) inside += lens[k];
      }
      EXPECT_NEAR(boundary_covariogram(s, t), 0.5 * inside, 2e-3 * total_len) << s.kind();
    }
  }
}

TEST(MinkowskiSum, Examples) {
  EXPECT_NEAR(minkowski_sum_area(GrainShape::disk(1), GrainShape::disk(1)), 4 * kPi, 1e-13);
  EXPECT_NEAR(minkowski_sum_area(GrainShape::rect(0.5, 0.5), GrainShape::rect(0.5, 0.5)), 4.0, 1e-14);
  EXPECT_NEAR(minkowski_sum_area(GrainShape::disk(1), GrainShape::rect(0.5, 0.5)), kPi + 5.0, 1e-13);
}

TEST(MinkowskiSum, DiskPlusSquareAgreesWithRasterization) {
  // Dense grid over the bounding box: a point is in K + M* when its
  // distance to M* is at most 1.
  const int n = 1200;
  const double h = 4.0 / n;
  int hit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -2 + (i + 0.5) * h, y = -2 + (j + 0.5) * h;
      const double dx = std::max(0.0, std::abs(x) - 0.5), dy = std::max(0.0, std::abs(y) - 0.5);
      if (dx * dx + dy * dy <= 1.0) ++hit;
    }
  EXPECT_NEAR(minkowski_sum_area(GrainShape::disk(1), GrainShape::rect(0.5, 0.5)), hit * h * h, 5e-3);
}

TEST(MinkowskiSum, ReflectsTheProbeAndCommutesForSymmetricShapes) {
  const auto tri = triangle();
  // K + K* for a triangle of area 1/2 is a hexagon of area 6 * 1/2.
  EXPECT_NEAR(minkowski_sum_area(tri, tri), 3.0, 1e-13);
  // K + (-K)* = K + K is 4 times the area.
  EXPECT_NEAR(minkowski_sum_area(tri, tri.reflected()), 2.0, 1e-13);
  const auto a = GrainShape::rect(1.0, 0.2), b = GrainShape::rect(0.5, 0.5).rotated(0.3);
  EXPECT_TRUE(a.centrally_symmetric());
  EXPECT_TRUE(b.centrally_symmetric());
  EXPECT_NEAR(minkowski_sum_area(a, b), minkowski_sum_area(b, a), 1e-12);
  EXPECT_NEAR(minkowski_sum_area(GrainShape::disk(0.3), b), minkowski_sum_area(b, GrainShape::disk(0.3)), 1e-12);
}

TEST(Circumradius, Examples) {
  EXPECT_DOUBLE_EQ(circumradius(GrainShape::disk(0.7)), 0.7);
  EXPECT_NEAR(circumradius(GrainShape::rect(0.5, 0.5)), std::sqrt(0.5), 1e-15);
  const auto tri = triangle().to_polygon();
  double mx = 0.0;
  for (const auto& v : tri.vertices()) mx = std::max(mx, norm(v));
  EXPECT_NEAR(circumradius(triangle()), mx, 1e-15);
}

TEST(Circumradius, ObtuseTriangleUsesLongestSide) {
  const auto s = GrainShape::polygon({{0, 0}, {4, 0}, {2, 0.5}});
  EXPECT_NEAR(circumradius(s), 2.0, 1e-14);
}

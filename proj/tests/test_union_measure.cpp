#include <gtest/gtest.h>

#include <random>

#include "boolmodel/union_measure.hpp"

using namespace boolmodel;

namespace {

constexpr double kLens1 = 1.2283696986087567;  // 2 acos(1/2) - sqrt(3)/2

void expect_close(const FunctionalVector& a, const FunctionalVector& b, double tol) {
  EXPECT_NEAR(a.v0, b.v0, tol);
  EXPECT_NEAR(a.v1, b.v1, tol);
  EXPECT_NEAR(a.v2, b.v2, tol);
}

GrainShape random_shape(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (static_cast<int>(u(rng) * 3)) {
    case 0:
      return GrainShape::disk(0.3 + 1.2 * u(rng));
    case 1:
      return GrainShape::rect(0.2 + u(rng), 0.2 + u(rng));
    default: {
      const int n = 3 + static_cast<int>(u(rng) * 5);
      std::vector<double> ang;
      for (int i = 0; i < n; ++i) ang.push_back(2 * kPi * u(rng));
      std::sort(ang.begin(), ang.end());
      std::vector<Vec2> v;
      const double r = 0.4 + u(rng);
      for (double a : ang) v.push_back(r * unit_from_angle(a));
      try {
        return GrainShape::polygon(v);
      } catch (const PreconditionError&) {
        return GrainShape::disk(r);
      }
    }
  }
}

std::vector<PlacedGrain> random_instance(std::mt19937_64& rng, const Window& w, int max_grains) {
  std::uniform_int_distribution<int> count(1, max_grains);
  std::uniform_real_distribution<double> ux(w.lo.x - 1.0, w.hi.x + 1.0), uy(w.lo.y - 1.0, w.hi.y + 1.0);
  std::vector<PlacedGrain> g;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) g.push_back({{ux(rng), uy(rng)}, random_shape(rng)});
  return g;
}

}  // namespace

TEST(IntersectConvex, Examples) {
  const Window big = Window::make({-10, -10}, {10, 10});
  std::vector<PlacedGrain> sq{{{0, 0}, GrainShape::rect(0.5, 0.5)}};
  expect_close(intersect_convex(sq, &big).volumes(), {1, 2, 1}, 1e-14);

  std::vector<PlacedGrain> apart{{{0, 0}, GrainShape::disk(1)}, {{2.5, 0}, GrainShape::disk(1)}};
  EXPECT_TRUE(intersect_convex(apart, nullptr).empty());
  expect_close(intersect_convex(apart, nullptr).volumes(), {0, 0, 0}, 0.0);

  std::vector<PlacedGrain> lens{{{0, 0}, GrainShape::disk(1)}, {{1, 0}, GrainShape::disk(1)}};
  expect_close(intersect_convex(lens, &big).volumes(), {1, 2 * kPi / 3, kLens1}, 1e-13);
}

TEST(IntersectConvex, TangentDisksAreEmpty) {
  std::vector<PlacedGrain> g{{{0, 0}, GrainShape::disk(1)}, {{2, 0}, GrainShape::disk(1)}};
  EXPECT_TRUE(intersect_convex(g, nullptr).empty());
}

TEST(IntersectConvex, CapIsEnforced) {
  std::vector<PlacedGrain> g(21, {{0, 0}, GrainShape::disk(1)});
  EXPECT_THROW(intersect_convex(g, nullptr), PreconditionError);
  g.pop_back();
  EXPECT_NO_THROW(intersect_convex(g, nullptr));
  EXPECT_THROW(intersect_convex(g, nullptr, 5), PreconditionError);
  EXPECT_THROW(intersect_convex({}, nullptr), PreconditionError);
}

TEST(IntersectConvex, DiskInsideDiskAndSquareInsideDisk) {
  std::vector<PlacedGrain> g{{{0, 0}, GrainShape::disk(2)}, {{0.3, 0.2}, GrainShape::disk(0.5)}};
  expect_close(intersect_convex(g, nullptr).volumes(), {1, 0.5 * kPi, 0.25 * kPi}, 1e-13);
  std::vector<PlacedGrain> h{{{0, 0}, GrainShape::disk(2)}, {{0.1, 0}, GrainShape::rect(0.5, 0.5)}};
  expect_close(intersect_convex(h, nullptr).volumes(), {1, 2, 1}, 1e-13);
  std::reverse(h.begin(), h.end());
  expect_close(intersect_convex(h, nullptr).volumes(), {1, 2, 1}, 1e-13);
}

TEST(IntersectConvex, DiskCutByWindowEdge) {
  // Half disk above the line y = 0.
  const Window w = Window::make({-5, 0}, {5, 5});
  std::vector<PlacedGrain> g{{{0, 0}, GrainShape::disk(1)}};
  expect_close(intersect_convex(g, &w).volumes(), {1, 0.5 * (kPi + 2), 0.5 * kPi}, 1e-13);
}

TEST(InclusionExclusion, Examples) {
  const Window big = Window::make({-10, -10}, {10, 10});
  expect_close(inclusion_exclusion_measure({}, big), {0, 0, 0}, 0.0);
  std::vector<PlacedGrain> one{{{0, 0}, GrainShape::disk(1)}};
  expect_close(inclusion_exclusion_measure(one, big), {1, kPi, kPi}, 1e-13);
  std::vector<PlacedGrain> two{{{0, 0}, GrainShape::disk(1)}, {{1, 0}, GrainShape::disk(1)}};
  expect_close(inclusion_exclusion_measure(two, big), {1, 4 * kPi / 3, 2 * kPi - kLens1}, 1e-13);
}

TEST(InclusionExclusion, RefusesLargeInstances) {
  const Window w = Window::make({0, 0}, {10, 10});
  std::vector<PlacedGrain> g;
  for (int i = 0; i < 19; ++i) g.push_back({{0.5 + 0.5 * i, 5}, GrainShape::disk(0.3)});
  EXPECT_THROW(inclusion_exclusion_measure(g, w), PreconditionError);
  EXPECT_NO_THROW(arrangement_measure(g, w));
}

TEST(Arrangement, RingOfSixDisksHasAHole) {
  const Window big = Window::make({-10, -10}, {10, 10});
  std::vector<PlacedGrain> ring;
  for (int k = 0; k < 6; ++k) ring.push_back({2.0 * unit_from_angle(k * kPi / 3 + 0.1), GrainShape::disk(1.2)});
  const auto ie = inclusion_exclusion_measure(ring, big);
  const auto ar = arrangement_measure(ring, big);
  EXPECT_NEAR(ie.v0, 0.0, 1e-9);
  expect_close(ar, ie, 1e-9);
}

TEST(Arrangement, SingleGrainMatchesClippedIntrinsicVolumes) {
  const Window big = Window::make({-10, -10}, {10, 10});
  for (auto shape : {GrainShape::disk(1.3), GrainShape::rect(0.4, 2.0), GrainShape::polygon({{0, 0}, {1, 0}, {0, 1}})}) {
    std::vector<PlacedGrain> g{{{1.0, -2.0}, shape}};
    const auto iv = intrinsic_volumes(shape);
    expect_close(arrangement_measure(g, big), {iv.v0, iv.v1, iv.v2}, 1e-12);
  }
  const Window half = Window::make({-5, 0}, {5, 5});
  std::vector<PlacedGrain> d{{{0, 0}, GrainShape::disk(1)}};
  expect_close(arrangement_measure(d, half), {1, 0.5 * (kPi + 2), 0.5 * kPi}, 1e-12);
}

TEST(Arrangement, MatchesInclusionExclusionOnRandomInstances) {
  std::mt19937_64 rng(20240917);
  const Window w = Window::make({0, 0}, {4, 3});
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto g = random_instance(rng, w, 8);
    const auto ie = inclusion_exclusion_measure(g, w);
    const auto ar = arrangement_measure(g, w);
    worst = std::max({worst, std::abs(ie.v0 - ar.v0), std::abs(ie.v1 - ar.v1), std::abs(ie.v2 - ar.v2)});
    ASSERT_NEAR(ie.v0, ar.v0, 1e-9) << "instance " << i;
    ASSERT_NEAR(ie.v1, ar.v1, 1e-9) << "instance " << i;
    ASSERT_NEAR(ie.v2, ar.v2, 1e-9) << "instance " << i;
  }
  RecordProperty("max_discrepancy", std::to_string(worst));
}

TEST(Arrangement, TranslationInvariance) {
  std::mt19937_64 rng(4);
  const Window w = Window::make({0, 0}, {5, 5});
  const Vec2 shift{123.456, -78.9};
  for (int i = 0; i < 100; ++i) {
    auto g = random_instance(rng, w, 12);
    const auto a = arrangement_measure(g, w);
    for (auto& p : g) p.center = p.center + shift;
    expect_close(arrangement_measure(g, w.translated(shift)), a, 1e-9);
  }
}

TEST(Arrangement, AreaIsMonotoneInGrains) {
  std::mt19937_64 rng(8);
  const Window w = Window::make({0, 0}, {5, 5});
  for (int i = 0; i < 50; ++i) {
    auto g = random_instance(rng, w, 15);
    double prev = 0.0;
    std::vector<PlacedGrain> acc;
    for (const auto& p : g) {
      acc.push_back(p);
      const double a = arrangement_measure(acc, w).v2;
      EXPECT_GE(a, prev - 1e-12);
      prev = a;
    }
  }
}

TEST(Arrangement, FarGrainsContributeNothing) {
  const Window w = Window::make({0, 0}, {5, 5});
  std::vector<PlacedGrain> g{{{2, 2}, GrainShape::disk(1)}};
  const auto a = arrangement_measure(g, w);
  g.push_back({{-1.01, 2}, GrainShape::disk(1)});
  g.push_back({{7, 7}, GrainShape::rect(1, 1)});
  expect_close(arrangement_measure(g, w), a, 0.0);
}

TEST(Arrangement, InteriorEstimatorOnIsolatedGrains) {
  const Window w = Window::make({0, 0}, {10, 10});
  std::vector<PlacedGrain> g{{{5, 5}, GrainShape::disk(1)},
                             {{0.2, 5}, GrainShape::disk(1)},       // lowest point inside W
                             {{5, -0.5}, GrainShape::disk(1)}};     // lowest point outside W
  const auto s = arrangement_statistics(g, w);
  EXPECT_NEAR(s.interior_euler_count, 2.0, 1e-12);
  EXPECT_NEAR(s.clipped.v0, 3.0, 1e-12);
}

TEST(Additivity, TwoGrainIdentity) {
  std::mt19937_64 rng(12);
  const Window w = Window::make({-10, -10}, {10, 10});
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    std::vector<PlacedGrain> g{{{u(rng), u(rng)}, random_shape(rng)}, {{u(rng), u(rng)}, random_shape(rng)}};
    const auto k = arrangement_measure(std::span(g).first(1), w);
    const auto l = arrangement_measure(std::span(g).last(1), w);
    const auto kl = intersect_convex(g, &w).volumes();
    expect_close(arrangement_measure(g, w), k + l - kl, 1e-9);
  }
}

TEST(Pixel, FullAndEmptyWindows) {
  const Window w = Window::make({0, 0}, {3, 2});
  expect_close(pixel_measure({}, w, 10.0), {0, 0, 0}, 0.0);
  std::vector<PlacedGrain> cover{{{1.5, 1}, GrainShape::rect(2, 2)}};
  const auto f = pixel_measure(cover, w, 10.0);
  EXPECT_NEAR(f.v2, 6.0, 0.1 * 3);
  EXPECT_EQ(f.v0, 1.0);
}

TEST(Pixel, DiskConvergesAtFirstOrderInArea) {
  const Window w = Window::make({-2, -2}, {2, 2});
  std::vector<PlacedGrain> d{{{0.0123, -0.0071}, GrainShape::disk(1)}};
  double prev_err = 0.0;
  for (double res : {25.0, 50.0, 100.0, 200.0, 400.0}) {
    const auto f = pixel_measure(d, w, res);
    EXPECT_EQ(f.v0, 1.0);
    EXPECT_NEAR(f.v1, kPi, 0.03 * kPi);
    const double err = std::abs(f.v2 - kPi);
    EXPECT_LT(err, 10.0 / res);
    prev_err = err;
  }
  EXPECT_LT(prev_err, 0.01);
}

TEST(Pixel, RingHoleIsResolved) {
  const Window w = Window::make({-5, -5}, {5, 5});
  std::vector<PlacedGrain> ring;
  for (int k = 0; k < 6; ++k) ring.push_back({2.0 * unit_from_angle(k * kPi / 3 + 0.1), GrainShape::disk(1.2)});
  EXPECT_EQ(pixel_measure(ring, w, 40.0).v0, 0.0);
}

TEST(Pixel, PgmFormat) {
  const Window w = Window::make({0, 0}, {2, 1});
  std::vector<PlacedGrain> g{{{0.25, 0.75}, GrainShape::rect(0.2, 0.2)}};
  const auto r = rasterize(g, w, 2.0);
  ASSERT_EQ(r.width, 4u);
  ASSERT_EQ(r.height, 2u);
  EXPECT_TRUE(r.at(0, 0));  // top-left pixel
  EXPECT_FALSE(r.at(0, 1));
  const std::string pgm = to_pgm(r);
  const std::string header = "P5\n4 2\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size()]), 255);
  EXPECT_EQ(pgm.size(), header.size() + 8);
}

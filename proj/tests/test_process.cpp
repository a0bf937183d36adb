#include <gtest/gtest.h>

#include <cmath>

#include "boolmodel/moments.hpp"
#include "boolmodel/process.hpp"

using namespace boolmodel;

namespace {

ModelConfig disk_config(double gamma, double side, std::uint64_t seed = 11) {
  ModelConfig c;
  c.gamma = gamma;
  c.grains = GrainDistribution::disks(ParameterLaw::constant(1.0));
  c.window = Window::make({0.0, 0.0}, {side, side});
  c.seed = seed;
  return c;
}

double distance_to_window(Vec2 p, const Window& w) {
  const double dx = std::max({w.lo.x - p.x, 0.0, p.x - w.hi.x});
  const double dy = std::max({w.lo.y - p.y, 0.0, p.y - w.hi.y});
  return std::hypot(dx, dy);
}

}  // namespace

TEST(ParameterLaw, Preconditions) {
  EXPECT_THROW(ParameterLaw::constant(0.0), PreconditionError);
  EXPECT_THROW(ParameterLaw::uniform(2.0, 1.0), PreconditionError);
  EXPECT_THROW(ParameterLaw::discrete({1.0}, {1.0, 2.0}), PreconditionError);
  EXPECT_THROW(ParameterLaw::discrete({1.0, 2.0}, {0.0, 0.0}), PreconditionError);
}

TEST(ParameterLaw, Moments) {
  EXPECT_NEAR(ParameterLaw::uniform(1.0, 2.0).moment(2), 7.0 / 3.0, 1e-14);
  EXPECT_NEAR(ParameterLaw::discrete({1.0, 3.0}, {1.0, 3.0}).moment(1), 2.5, 1e-14);
  const auto u = ParameterLaw::uniform(0.5, 1.5);
  // Kinked integrand: |x - 1|, mean 1/4.
  const double kink[1] = {1.0};
  EXPECT_NEAR(u.expect([](double x) { return std::abs(x - 1.0); }, kink), 0.25, 1e-13);
}

TEST(GrainDistribution, BoundValidation) {
  EXPECT_THROW(GrainDistribution::disks(ParameterLaw::uniform(0.5, 1.5), 1.0), PreconditionError);
  EXPECT_NO_THROW(GrainDistribution::disks(ParameterLaw::uniform(0.5, 1.5), 1.5));
  EXPECT_THROW(GrainDistribution::fixed(GrainShape::rect(1.0, 1.0), false, 1.2), PreconditionError);
  EXPECT_TRUE(GrainDistribution::fixed(GrainShape::rect(1.0, 1.0), true).isotropic());
  EXPECT_FALSE(GrainDistribution::rects(ParameterLaw::constant(1.0), ParameterLaw::constant(2.0)).isotropic());
}

TEST(Sample, Deterministic) {
  const auto c = disk_config(0.5, 8.0);
  const auto a = sample(c, 3), b = sample(c, 3), d = sample(c, 4);
  ASSERT_EQ(a.placed.size(), b.placed.size());
  for (std::size_t i = 0; i < a.placed.size(); ++i) {
    EXPECT_EQ(a.placed[i].center.x, b.placed[i].center.x);
    EXPECT_EQ(a.placed[i].center.y, b.placed[i].center.y);
  }
  bool differs = a.placed.size() != d.placed.size();
  for (std::size_t i = 0; !differs && i < a.placed.size(); ++i) differs = a.placed[i].center.x != d.placed[i].center.x;
  EXPECT_TRUE(differs);
}

TEST(Sample, GermsLieInDilatedWindow) {
  auto c = disk_config(1.0, 5.0);
  c.grains = GrainDistribution::disks(ParameterLaw::uniform(0.2, 0.8));
  for (std::uint64_t r = 0; r < 50; ++r)
    for (const auto& g : sample(c, r).placed) EXPECT_LE(distance_to_window(g.center, c.window), 0.8 + 1e-12);
}

TEST(Sample, PoissonMeanCount) {
  const auto c = disk_config(0.5, 6.0);
  const double mean = c.gamma * c.dilated_area();
  EXPECT_NEAR(c.dilated_area(), 36.0 + 24.0 + kPi, 1e-12);
  const int reps = 10000;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) sum += static_cast<double>(sample(c, r).placed.size());
  EXPECT_NEAR(sum / reps, mean, 3.0 * std::sqrt(mean / reps));
}

TEST(Sample, SparseLimitEmptyFrequency) {
  auto c = disk_config(1.0, 2.0);
  c.gamma = 0.01 / c.dilated_area();
  const int reps = 10000;
  int empty = 0;
  for (int r = 0; r < reps; ++r) empty += sample(c, r).placed.empty() ? 1 : 0;
  const double p = std::exp(-0.01);
  EXPECT_NEAR(empty / static_cast<double>(reps), p, 3.0 * std::sqrt(p * (1.0 - p) / reps));
}

TEST(Rng, PoissonLargeMean) {
  Rng rng(5, 0);
  const int n = 100000;
  const double mean = 75.0;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(mean));
    s += k;
    s2 += k * k;
  }
  const double m = s / n, v = s2 / n - m * m;
  EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n));
  EXPECT_NEAR(v / mean, 1.0, 0.03);
}

TEST(Capacity, TheoryExamples) {
  const auto disks = GrainDistribution::disks(ParameterLaw::constant(1.0));
  EXPECT_NEAR(theory_capacity(0.3, disks, Probe{{0.0, 0.0}, {}}), 1.0 - volume_fraction(0.3, kPi), 1e-15);
  const auto unit_squares = GrainDistribution::fixed(GrainShape::rect(0.5, 0.5));
  EXPECT_NEAR(theory_capacity(1.0, unit_squares, Probe{{0.0, 0.0}, {}}), 0.36787944117144233, 1e-14);
  EXPECT_NEAR(theory_capacity(0.1, disks, Probe{{0.0, 0.0}, GrainShape::disk(1.0)}), std::exp(-0.4 * kPi), 1e-14);
  EXPECT_NEAR(theory_capacity(0.1, disks, Probe{{0.0, 0.0}, GrainShape::disk(1.0)}), 0.28461, 5e-6);
}

TEST(Capacity, DilationAreaPaths) {
  // Square probe against aligned squares: translative Minkowski sum of sides 2 and 1.
  const auto squares = GrainDistribution::fixed(GrainShape::rect(1.0, 1.0));
  EXPECT_NEAR(expected_dilation_area(squares, Probe{{0.0, 0.0}, GrainShape::rect(0.5, 0.5)}), 9.0, 1e-12);
  // Rotated squares against a disk probe: Steiner formula.
  const auto rotated = GrainDistribution::fixed(GrainShape::rect(1.0, 1.0), true);
  EXPECT_NEAR(expected_dilation_area(rotated, Probe{{0.0, 0.0}, GrainShape::disk(0.5)}), 4.0 + 4.0 + kPi / 4.0,
              1e-12);
}

TEST(Capacity, EmpiricalPointProbe) {
  const auto c = disk_config(0.3, 6.0, 99);
  const auto e = empirical_capacity(c, Probe{{3.0, 3.0}, {}}, 4000);
  EXPECT_NEAR(e.estimate, 1.0 - volume_fraction(0.3, kPi), 3.0 * e.standard_error);
}

TEST(Capacity, SparseLimitAndClearance) {
  const auto c = disk_config(1e-6, 6.0, 1);
  EXPECT_EQ(empirical_capacity(c, Probe{{3.0, 3.0}, {}}, 200).estimate, 1.0);
  EXPECT_THROW(empirical_capacity(c, Probe{{0.5, 3.0}, {}}, 200), PreconditionError);
}

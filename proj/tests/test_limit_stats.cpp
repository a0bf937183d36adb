#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "boolmodel/limit_stats.hpp"
#include "boolmodel/moments.hpp"

using namespace boolmodel;

namespace {

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<double> x(n);
  for (auto& v : x) {
    // Inverse CDF by bisection on erfc.
    const double u = rng.uniform(1e-12, 1.0 - 1e-12);
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (0.5 * std::erfc(-mid / std::sqrt(2.0)) < u ? lo : hi) = mid;
    }
    v = 0.5 * (lo + hi);
  }
  return x;
}

// Brute-force integral of |F_N - Phi| by adaptive quadrature.
double w1_by_quadrature(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  auto f = [&](double t) {
    const double F = static_cast<double>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) / n;
    return std::abs(F - 0.5 * std::erfc(-t / std::sqrt(2.0)));
  };
  return integrate(f, -15.0, 15.0, 1e-13, x).value;
}

}  // namespace

TEST(Wasserstein, ConstantSampleAtZero) {
  const std::vector<double> z(50, 0.0);
  EXPECT_NEAR(wasserstein_to_normal(z), std::sqrt(2.0 / kPi), 1e-14);
  EXPECT_NEAR(ks_to_normal(z), 0.5, 1e-15);
}

TEST(Wasserstein, MatchesQuadratureOracle) {
  const std::vector<double> x{-1.7, -0.3, -0.3, 0.2, 0.9, 2.4, 3.1};
  EXPECT_NEAR(wasserstein_to_normal(x), w1_by_quadrature(x), 1e-10);
  const auto y = normal_sample(200, 3);
  EXPECT_NEAR(wasserstein_to_normal(y), w1_by_quadrature(y), 1e-10);
}

TEST(Wasserstein, NormalSampleIsClose) {
  const auto z = standardize(normal_sample(10000, 8));
  EXPECT_LT(wasserstein_to_normal(z), 0.02);
  EXPECT_LT(ks_to_normal(z), 0.02);
}

TEST(Wasserstein, TwoPointSampleExceedsCalibration) {
  std::vector<double> x;
  for (int i = 0; i < 1000; ++i) x.push_back(i % 2 ? 1.0 : -1.0);
  EXPECT_GT(wasserstein_to_normal(standardize(x)), calibrated_threshold(1000, 0.99, 200));
}

TEST(Calibration, DeterministicAndScaled) {
  const double a = calibrated_threshold(2000, 0.99, 300), b = calibrated_threshold(2000, 0.99, 300);
  EXPECT_EQ(a, b);
  EXPECT_GT(a, 0.01);
  EXPECT_LT(a, 0.05);
  EXPECT_LT(calibrated_threshold(8000, 0.99, 300), a);
}

TEST(Standardize, ExactMoments) {
  std::vector<double> x;
  Rng rng(1, 1);
  for (int i = 0; i < 5000; ++i) x.push_back(1e6 + std::pow(rng.uniform(), 3) * 1e-2);
  const auto z = standardize(x);
  const auto m = sample_moments(z);
  EXPECT_NEAR(m.mean, 0.0, 1e-12);
  EXPECT_NEAR(m.variance, 1.0, 1e-12);
  EXPECT_THROW(standardize(std::vector<double>(10, 2.0)), DegenerateVarianceError);
}

TEST(Spearman, RanksAndTies) {
  const std::vector<double> r{8, 16, 32, 64};
  EXPECT_NEAR(spearman(r, std::vector<double>{0.4, 0.3, 0.2, 0.1}), -1.0, 1e-15);
  EXPECT_NEAR(spearman(r, std::vector<double>{1.0, 2.0, 3.0, 4.0}), 1.0, 1e-15);
  // Ties get average ranks: y ranks (1.5, 1.5, 3, 4).
  const double rho = spearman(r, std::vector<double>{1.0, 1.0, 2.0, 3.0});
  EXPECT_NEAR(rho, 4.5 / std::sqrt(5.0 * 4.5), 1e-14);
}

TEST(Batch, SeedSplitDeterminism) {
  ModelConfig c;
  c.gamma = 0.5;
  c.window = Window::make({0.0, 0.0}, {1.0, 1.0});
  c.seed = 31;
  const auto a = run_batch(c, 6.0, 60, 1), b = run_batch(c, 6.0, 60, 3), d = run_batch(c, 6.0, 60, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(component(a.clipped[i], j), component(b.clipped[i], j));
      EXPECT_EQ(component(a.clipped[i], j), component(d.clipped[i], j));
      EXPECT_EQ(component(a.interior[i], j), component(b.interior[i], j));
    }
  }
  EXPECT_NE(scale_seed(31, 6.0), scale_seed(31, 12.0));
}

TEST(Batch, AreaFractionAndErrorScaling) {
  ModelConfig c;
  c.gamma = 0.3;
  c.window = Window::make({0.0, 0.0}, {1.0, 1.0});
  c.seed = 5;
  const auto b = run_batch(c, 8.0, 1600, 1);
  std::vector<double> f;
  for (const auto& v : b.clipped) f.push_back(v.v2 / b.window.area());
  const auto m = sample_moments(f);
  const double se = std::sqrt(m.variance / f.size());
  EXPECT_NEAR(m.mean, volume_fraction(0.3, kPi), 3.0 * se);
  // Standard error of a quarter of the batch is twice as large.
  const auto q = sample_moments(std::span<const double>(f).subspan(0, 400));
  EXPECT_NEAR(std::sqrt(q.variance / 400.0) / se, 2.0, 0.5);
}

TEST(Multivariate, VolumeDirectionReducesToVolumeCase) {
  ModelConfig c;
  c.gamma = 0.3;
  c.window = Window::make({0.0, 0.0}, {1.0, 1.0});
  c.seed = 9;
  const auto b = run_batch(c, 8.0, 200, 1);
  CovMatrix s;
  for (int i = 0; i < 3; ++i) s.s[i][i] = 1.0;
  const std::array<double, 3> e2{0.0, 0.0, 1.0};
  const auto r = multivariate_check(b, s, std::span<const std::array<double, 3>>(&e2, 1));
  EXPECT_NEAR(r.directions[0].empirical_variance, r.empirical[2][2], 1e-12 * r.empirical[2][2]);
  const auto n = normality_report(std::span<const ReplicateBatch>(&b, 1), 2);
  EXPECT_NEAR(r.directions[0].w1, n.scales[0].w1, 1e-14);
}

TEST(Normality, DegenerateVariance) {
  ModelConfig c;
  c.gamma = 0.0;
  c.window = Window::make({0.0, 0.0}, {1.0, 1.0});
  const auto b = run_batch(c, 4.0, 120, 1);
  EXPECT_THROW(normality_report(std::span<const ReplicateBatch>(&b, 1), 2), DegenerateVarianceError);
}

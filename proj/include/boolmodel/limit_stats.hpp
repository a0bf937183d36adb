#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "boolmodel/covariance.hpp"
#include "boolmodel/process.hpp"
#include "boolmodel/union_measure.hpp"

namespace boolmodel {

/// Replicates of the model observed in the window r W.
struct ReplicateBatch {
  double scale = 1.0;
  Window window{};
  std::uint64_t seed = 0;  // seed actually used for this scale
  /// phi(Z cap rW) per replicate, in replicate order.
  std::vector<FunctionalVector> clipped;
  /// Edge-corrected functionals per replicate (see UnionStatistics::interior).
  std::vector<FunctionalVector> interior;
  std::size_t size() const { return clipped.size(); }
};

/// Seed for scale r derived from the master seed; distinct scales get
/// independent streams.
std::uint64_t scale_seed(std::uint64_t master, double r);

/// N replicates at window r W (W = config.window scaled about the origin).
/// Output does not depend on the thread count.
ReplicateBatch run_batch(const ModelConfig& config, double r, std::size_t n, unsigned threads = 1);

/// Component j of every replicate.
std::vector<double> component_values(std::span<const FunctionalVector> v, int j);
/// a0 V0 + a1 V1 + a2 V2 of every replicate.
std::vector<double> linear_combination(std::span<const FunctionalVector> v, const std::array<double, 3>& a);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};
SampleMoments sample_moments(std::span<const double> x);

/// (x - mean) / sd with the unbiased sample variance; sample mean 0 and
/// sample variance 1 up to rounding. Throws DegenerateVarianceError for a
/// constant sample.
std::vector<double> standardize(std::span<const double> x);

class DegenerateVarianceError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Integral of |F_N - Phi| over the line, exact up to rounding.
double wasserstein_to_normal(std::span<const double> sample);
/// sup |F_N - Phi|.
double ks_to_normal(std::span<const double> sample);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// Quantile of wasserstein_to_normal over `batches` standardized normal
/// samples of size n; deterministic in seed.
double calibrated_threshold(std::size_t n, double quantile = 0.99, std::size_t batches = 1000,
                            std::uint64_t seed = 0x5eedc1a1u);

struct ScaleReport {
  double scale = 0.0;
  std::size_t reps = 0;
  double mean = 0.0;
  double variance_per_area = 0.0;
  double w1 = 0.0;
  double ks = 0.0;
};

struct NormalityReport {
  int functional = 2;  // -1 for a general linear combination
  std::vector<ScaleReport> scales;
  /// Least-squares slope of log w1 against log r.
  double slope = 0.0;
  double spearman = 0.0;
};

/// Normality suite for one functional over precomputed batches.
NormalityReport normality_report(std::span<const ReplicateBatch> batches, int functional);
/// Same suite for a0 V0 + a1 V1 + a2 V2.
NormalityReport normality_report(std::span<const ReplicateBatch> batches, const std::array<double, 3>& a);

/// Runs one batch per scale and reports all three functionals.
struct CltExperiment {
  std::vector<ReplicateBatch> batches;
  std::array<NormalityReport, 3> reports;
};
CltExperiment clt_experiment(const ModelConfig& config, std::span<const double> scales, std::size_t n,
                             unsigned threads = 1);

struct DirectionReport {
  std::array<double, 3> a{};
  double theory_variance = 0.0;     // a' Sigma a
  double empirical_variance = 0.0;  // per area
  double relative_error = 0.0;
  double w1 = 0.0;
  double ks = 0.0;
};

struct MultivariateReport {
  std::array<std::array<double, 3>, 3> empirical{};  // covariance per area
  std::array<std::array<double, 3>, 3> relative_error{};
  double max_relative_error = 0.0;
  std::vector<DirectionReport> directions;
};

/// Five fixed nonzero coefficient vectors used by default.
std::vector<std::array<double, 3>> default_directions();

/// Compares the empirical covariance per area of the clipped functionals
/// with sigma and runs the univariate suite on linear combinations.
MultivariateReport multivariate_check(const ReplicateBatch& batch, const CovMatrix& sigma,
                                      std::span<const std::array<double, 3>> directions);

}  // namespace boolmodel

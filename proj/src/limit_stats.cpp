#include "boolmodel/limit_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "boolmodel/parallel.hpp"

namespace boolmodel {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double Phi(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }
double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
// Antiderivative of Phi vanishing at -infinity.
double G(double x) { return x * Phi(x) + phi(x); }

double integral_Phi(double a, double b) {
  if (a >= 0.0) return (b - a) - (G(-a) - G(-b));
  return G(b) - G(a);
}

// Integral over [a, b] of |c - Phi|.
double abs_gap(double a, double b, double c) {
  if (!(b > a)) return 0.0;
  static const boost::math::normal_distribution<double> n01;
  const double xs = c <= 0.0 ? -INFINITY : c >= 1.0 ? INFINITY : boost::math::quantile(n01, c);
  auto above = [&](double lo, double hi) { return integral_Phi(lo, hi) - c * (hi - lo); };  // Phi > c
  auto below = [&](double lo, double hi) { return c * (hi - lo) - integral_Phi(lo, hi); };
  if (xs <= a) return above(a, b);
  if (xs >= b) return below(a, b);
  return below(a, xs) + above(xs, b);
}

std::vector<double> sorted(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t scale_seed(std::uint64_t master, double r) {
  return splitmix64(master ^ splitmix64(std::bit_cast<std::uint64_t>(r)));
}

ReplicateBatch run_batch(const ModelConfig& config, double r, std::size_t n, unsigned threads) {
  if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("window scale must be positive");
  config.validate();
  ModelConfig c = config;
  c.window = config.window.scaled(r);
  c.seed = scale_seed(config.seed, r);
  ReplicateBatch b;
  b.scale = r;
  b.window = c.window;
  b.seed = c.seed;
  b.clipped.resize(n);
  b.interior.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto s = sample(c, i);
    const auto st = arrangement_statistics(s.placed, c.window);
    b.clipped[i] = st.clipped;
    b.interior[i] = st.interior();
  });
  return b;
}

std::vector<double> component_values(std::span<const FunctionalVector> v, int j) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(component(f, j));
  return out;
}

std::vector<double> linear_combination(std::span<const FunctionalVector> v, const std::array<double, 3>& a) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(a[0] * f.v0 + a[1] * f.v1 + a[2] * f.v2);
  return out;
}

SampleMoments sample_moments(std::span<const double> x) {
  if (x.size() < 2) throw PreconditionError("sample moments need at least 2 values");
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return {m, s / (n - 1.0)};
}

std::vector<double> standardize(std::span<const double> x) {
  const auto m = sample_moments(x);
  if (!(m.variance > 0.0)) throw DegenerateVarianceError("sample variance is zero; the functional has no spread");
  const double sd = std::sqrt(m.variance);
  std::vector<double> z;
  z.reserve(x.size());
  for (double v : x) z.push_back((v - m.mean) / sd);
  // One correction pass removes the rounding left by the first.
  const auto m2 = sample_moments(z);
  const double sd2 = std::sqrt(m2.variance);
  for (double& v : z) v = (v - m2.mean) / sd2;
  return z;
}

double wasserstein_to_normal(std::span<const double> sample) {
  if (sample.size() < 2) throw PreconditionError("wasserstein_to_normal needs at least 2 values");
  const auto z = sorted(sample);
  const double n = static_cast<double>(z.size());
  double d = G(z.front()) + G(-z.back());
  for (std::size_t k = 0; k + 1 < z.size(); ++k) d += abs_gap(z[k], z[k + 1], static_cast<double>(k + 1) / n);
  return d;
}

double ks_to_normal(std::span<const double> sample) {
  if (sample.size() < 2) throw PreconditionError("ks_to_normal needs at least 2 values");
  const auto z = sorted(sample);
  const double n = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double p = Phi(z[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - p, p - static_cast<double>(k) / n});
  }
  return d;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("spearman needs two samples of equal size >= 2");
  const auto rx = ranks(x), ry = ranks(y);
  const auto mx = sample_moments(rx), my = sample_moments(ry);
  if (!(mx.variance > 0.0) || !(my.variance > 0.0)) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) s += (rx[i] - mx.mean) * (ry[i] - my.mean);
  return s / (static_cast<double>(rx.size()) - 1.0) / std::sqrt(mx.variance * my.variance);
}

double calibrated_threshold(std::size_t n, double quantile, std::size_t batches, std::uint64_t seed) {
  if (n < 2 || batches < 1 || !(quantile > 0.0 && quantile < 1.0))
    throw PreconditionError("calibration needs n >= 2, at least one batch and a quantile in (0, 1)");
  std::vector<double> w(batches);
  std::vector<double> x(n);
  for (std::size_t b = 0; b < batches; ++b) {
    Rng rng(seed, b);
    for (std::size_t i = 0; i < n; i += 2) {
      // Box-Muller; 1 - u keeps the logarithm finite.
      const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform())), a = 2.0 * kPi * rng.uniform();
      x[i] = r * std::cos(a);
      if (i + 1 < n) x[i + 1] = r * std::sin(a);
    }
    w[b] = wasserstein_to_normal(standardize(x));
  }
  std::sort(w.begin(), w.end());
  const auto k = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(batches)));
  return w[std::min(batches, std::max<std::size_t>(k, 1)) - 1];
}

NormalityReport normality_report(std::span<const ReplicateBatch> batches, const std::array<double, 3>& a) {
  if (a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0) throw PreconditionError("coefficient vector must be nonzero");
  NormalityReport rep;
  rep.functional = -1;
  for (int j = 0; j < 3; ++j)
    if (a[j] == 1.0 && a[(j + 1) % 3] == 0.0 && a[(j + 2) % 3] == 0.0) rep.functional = j;
  const std::string name = rep.functional >= 0 ? "V" + std::to_string(rep.functional) : "the linear combination";
  std::vector<double> lr, lw, r, w;
  for (const auto& b : batches) {
    if (b.size() < 100) throw PreconditionError("distributional checks need at least 100 replicates");
    const auto x = linear_combination(b.clipped, a);
    const auto m = sample_moments(x);
    if (!(m.variance > 0.0))
      throw DegenerateVarianceError(name + " has zero variance at scale " + std::to_string(b.scale) +
                                    "; asymptotic normality needs positive variance");
    const auto z = standardize(x);
    ScaleReport s;
    s.scale = b.scale;
    s.reps = b.size();
    s.mean = m.mean;
    s.variance_per_area = m.variance / b.window.area();
    s.w1 = wasserstein_to_normal(z);
    s.ks = ks_to_normal(z);
    rep.scales.push_back(s);
    r.push_back(s.scale);
    w.push_back(s.w1);
    lr.push_back(std::log(s.scale));
    lw.push_back(std::log(s.w1));
  }
  if (rep.scales.size() >= 2) {
    const auto mx = sample_moments(lr), my = sample_moments(lw);
    double sxy = 0.0;
    for (std::size_t i = 0; i < lr.size(); ++i) sxy += (lr[i] - mx.mean) * (lw[i] - my.mean);
    rep.slope = mx.variance > 0.0 ? sxy / (static_cast<double>(lr.size()) - 1.0) / mx.variance : 0.0;
    rep.spearman = spearman(r, w);
  }
  return rep;
}

NormalityReport normality_report(std::span<const ReplicateBatch> batches, int functional) {
  if (functional < 0 || functional > 2) throw PreconditionError("functional index must be 0, 1 or 2");
  std::array<double, 3> a{};
  a[functional] = 1.0;
  return normality_report(batches, a);
}

CltExperiment clt_experiment(const ModelConfig& config, std::span<const double> scales, std::size_t n,
                             unsigned threads) {
  CltExperiment e;
  for (double r : scales) e.batches.push_back(run_batch(config, r, n, threads));
  for (int j = 0; j <= 2; ++j) e.reports[j] = normality_report(e.batches, j);
  return e;
}

std::vector<std::array<double, 3>> default_directions() {
  return {{0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, -1.0, 0.5}, {0.0, 1.0, -1.0}, {2.0, 0.5, -0.25}};
}

MultivariateReport multivariate_check(const ReplicateBatch& batch, const CovMatrix& sigma,
                                      std::span<const std::array<double, 3>> directions) {
  if (batch.size() < 100) throw PreconditionError("multivariate check needs at least 100 replicates");
  const double area = batch.window.area();
  const double n = static_cast<double>(batch.size());
  std::array<double, 3> mean{};
  for (const auto& f : batch.clipped)
    for (int j = 0; j < 3; ++j) mean[j] += component(f, j) / n;
  MultivariateReport rep;
  for (const auto& f : batch.clipped)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        rep.empirical[i][j] += (component(f, i) - mean[i]) * (component(f, j) - mean[j]) / ((n - 1.0) * area);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      rep.relative_error[i][j] = std::abs(rep.empirical[i][j] - sigma(i, j)) / std::abs(sigma(i, j));
      rep.max_relative_error = std::max(rep.max_relative_error, rep.relative_error[i][j]);
    }
  for (const auto& a : directions) {
    DirectionReport d;
    d.a = a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d.theory_variance += a[i] * a[j] * sigma(i, j);
    const auto x = linear_combination(batch.clipped, a);
    d.empirical_variance = sample_moments(x).variance / area;
    d.relative_error = std::abs(d.empirical_variance - d.theory_variance) / d.theory_variance;
    const auto z = standardize(x);
    d.w1 = wasserstein_to_normal(z);
    d.ks = ks_to_normal(z);
    rep.directions.push_back(d);
  }
  return rep;
}

}  // namespace boolmodel

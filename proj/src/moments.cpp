#include "boolmodel/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "boolmodel/quadrature.hpp"

namespace boolmodel {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

void check_t(int d, std::span<const double> t) {
  if (d < 1) throw PreconditionError("dimension must be at least 1");
  if (t.size() != static_cast<std::size_t>(d + 1))
    throw PreconditionError("grain density vector must have d + 1 entries");
}

double polygon_angle(Vec2 v) { return std::atan2(v.y, v.x); }

}  // namespace

double composition_sum(int d, int s, int total, int lo, int hi, std::span<const double> t) {
  if (s == 0) return total == 0 ? 1.0 : 0.0;
  double acc = 0.0;
  for (int m = lo; m <= hi; ++m) {
    if (m > total) break;
    acc += kinematic_constant(m, d) * t[static_cast<std::size_t>(m)] *
           composition_sum(d, s - 1, total - m, lo, hi, t);
  }
  return acc;
}

double unit_ball_volume(int i) { return std::pow(kPi, 0.5 * i) / std::tgamma(0.5 * i + 1.0); }

double kinematic_constant(int i, int j) {
  return factorial(i) * unit_ball_volume(i) / (factorial(j) * unit_ball_volume(j));
}

double isotropic_density(int d, int j, std::span<const double> t) {
  check_t(d, t);
  if (j < 0 || j > d) throw PreconditionError("density index out of range");
  const double td = t[static_cast<std::size_t>(d)];
  if (j == d) return -std::expm1(-td);
  double inner = t[static_cast<std::size_t>(j)];
  for (int s = 2; s <= d - j; ++s) {
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    inner -= kinematic_constant(d, j) * sign / factorial(s) * composition_sum(d, s, (s - 1) * d + j, j + 1, d - 1, t);
  }
  return std::exp(-td) * inner;
}

double p_polynomial(int d, int j, int k, std::span<const double> t) {
  check_t(d, t);
  if (j < 0 || k > d || j > k) throw PreconditionError("p_polynomial needs 0 <= j <= k <= d");
  if (j == k) return 1.0;
  double sum = 0.0;
  for (int s = 1; s <= k - j; ++s) {
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    sum += sign / factorial(s) * composition_sum(d, s, s * d + j - k, j, d - 1, t);
  }
  return kinematic_constant(k, j) * sum;
}

double isotropic_local_mean(int d, int j, std::span<const double> v, std::span<const double> t) {
  check_t(d, t);
  if (v.size() != t.size()) throw PreconditionError("intrinsic volume vector must have d + 1 entries");
  const double td = t[static_cast<std::size_t>(d)];
  double acc = v[static_cast<std::size_t>(j)] * -std::expm1(-td);
  for (int m = 1; m <= d - j; ++m) {
    const double phi_m = kinematic_constant(j + m, j) * v[static_cast<std::size_t>(j + m)];
    double inner = 0.0;
    for (int s = 1; s <= m; ++s) {
      const double sign = (s % 2 == 1) ? 1.0 : -1.0;
      inner += sign / factorial(s) * composition_sum(d, s, s * d - m, 0, d - 1, t);
    }
    acc += std::exp(-td) * phi_m * inner;
  }
  return acc;
}

std::array<double, 4> ball_densities_3d(double gamma, double er, double er2, double er3) {
  if (!(gamma >= 0.0)) throw PreconditionError("gamma must be nonnegative");
  const double t[4] = {gamma, gamma * 4.0 * er, gamma * 2.0 * kPi * er2, gamma * 4.0 * kPi / 3.0 * er3};
  return {isotropic_density(3, 3, t), isotropic_density(3, 2, t), isotropic_density(3, 1, t),
          isotropic_density(3, 0, t)};
}

// ---------------------------------------------------------------------------

double rotation_averaged_mixed_area(const GrainShape& k, const GrainShape& m) {
  const auto vk = intrinsic_volumes(k), vm = intrinsic_volumes(m);
  // A disk makes the mixed term rotation invariant: perimeter times radius.
  if (m.is_disk()) return 2.0 * m.as_disk().radius * vk.v1;
  if (k.is_disk()) return 2.0 * k.as_disk().radius * vm.v1;
  const auto pk = k.to_polygon();
  const auto pm = m.reflected().to_polygon();
  std::vector<double> breaks{0.0, 2.0 * kPi};
  for (std::size_t i = 0; i < pk.size(); ++i)
    for (std::size_t j = 0; j < pm.size(); ++j) {
      const double a = polygon_angle(outward_normal(pk[i], pk.next(i))) -
                       polygon_angle(outward_normal(pm[j], pm.next(j)));
      breaks.push_back(std::fmod(std::fmod(a, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi));
    }
  std::sort(breaks.begin(), breaks.end());
  const auto& kv = pk.vertices();
  const auto& mv = pm.vertices();
  auto f = [&](double theta) {
    std::vector<Vec2> rm(mv.size());
    for (std::size_t i = 0; i < mv.size(); ++i) rm[i] = rotate(mv[i], theta);
    // A(K + M) - A(K) - A(M) = sum over edges e of K of |e| h_M(n_e).
    double s = 0.0;
    for (std::size_t i = 0; i < kv.size(); ++i) {
      const Vec2 a = kv[i], b = kv[(i + 1) % kv.size()];
      const Vec2 n = outward_normal(a, b);
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : rm) h = std::max(h, dot(v, n));
      s += norm(b - a) * h;
    }
    return s;
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += gauss_legendre(f, breaks[i], breaks[i + 1], 1e-15).value;
  return total / (2.0 * kPi);
}

GrainMoments grain_moments(const GrainDistribution& q) {
  GrainMoments m;
  m.ev1 = q.expect([](const GrainShape& k) { return intrinsic_volumes(k).v1; });
  m.ev2 = q.expect([](const GrainShape& k) { return intrinsic_volumes(k).v2; });
  m.ev1sq = q.expect([](const GrainShape& k) { return std::pow(intrinsic_volumes(k).v1, 2); });
  m.ev2sq = q.expect([](const GrainShape& k) { return std::pow(intrinsic_volumes(k).v2, 2); });
  m.ev1v2 = q.expect([](const GrainShape& k) {
    const auto v = intrinsic_volumes(k);
    return v.v1 * v.v2;
  });
  if (q.isotropic()) {
    m.mixed = 2.0 * m.ev1 * m.ev1 / kPi;
  } else if (q.family() == GrainDistribution::Family::rect) {
    m.mixed = 8.0 * q.halfwidth_law().moment(1) * q.halfheight_law().moment(1);
  } else {
    const auto& k = q.shape();
    m.mixed = minkowski_sum_area(k, k) - 2.0 * intrinsic_volumes(k).v2;
  }
  return m;
}

double volume_fraction(double gamma, double ev2) {
  if (!(gamma >= 0.0) || !(ev2 >= 0.0)) throw PreconditionError("volume_fraction needs gamma >= 0 and ev2 >= 0");
  return -std::expm1(-gamma * ev2);
}

DensityVector miles_densities_2d(double gamma, const GrainMoments& m, bool isotropic) {
  if (!(gamma >= 0.0)) throw PreconditionError("gamma must be nonnegative");
  double mixed;
  if (isotropic) {
    mixed = 2.0 * m.ev1 * m.ev1 / kPi;
  } else {
    if (!m.mixed) throw PreconditionError("anisotropic densities need the mixed translative moment");
    mixed = *m.mixed;
  }
  const double e = std::exp(-gamma * m.ev2);
  return {e * (gamma - 0.5 * gamma * gamma * mixed), e * gamma * m.ev1, -std::expm1(-gamma * m.ev2)};
}

// ---------------------------------------------------------------------------

DensityVector window_densities(const UnionStatistics& stats, const Window& w) {
  const double a = w.area();
  return {stats.interior_euler_count / a, 0.5 * stats.interior_boundary_length / a, stats.clipped.v2 / a};
}

DensityEstimate estimate_densities(std::span<const DensityVector> xs) {
  if (xs.size() < 2) throw PreconditionError("estimate_densities needs at least 2 replicates");
  const double n = static_cast<double>(xs.size());
  std::array<double, 3> mean{};
  for (const auto& x : xs) {
    mean[0] += x.d0;
    mean[1] += x.d1;
    mean[2] += x.d2;
  }
  for (auto& v : mean) v /= n;
  DensityEstimate out;
  for (const auto& x : xs) {
    const double d[3] = {x.d0 - mean[0], x.d1 - mean[1], x.d2 - mean[2]};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.covariance[i][j] += d[i] * d[j];
  }
  for (auto& row : out.covariance)
    for (auto& v : row) v /= (n - 1.0);
  out.mean = {mean[0], mean[1], mean[2]};
  out.standard_error = {std::sqrt(out.covariance[0][0] / n), std::sqrt(out.covariance[1][1] / n),
                        std::sqrt(out.covariance[2][2] / n)};
  out.reps = xs.size();
  return out;
}

IntensityEstimate invert_intensity(const DensityVector& o, bool isotropic) {
  if (!isotropic) throw PreconditionError("intensity inversion needs an isotropic model");
  if (!(o.d2 >= 0.0) || !(o.d2 < 1.0)) throw PreconditionError("observed d2 must lie in [0, 1)");
  const double q = 1.0 - o.d2;
  const double t = -std::log1p(-o.d2);
  const double u = o.d1 / q;
  const double gamma = o.d0 / q + u * u / kPi;
  if (!(gamma > 0.0)) throw PreconditionError("estimated intensity is not positive; estimation failed");
  return {gamma, u / gamma, t / gamma, 0.0};
}

std::array<double, 3> intensity_gradient(const DensityVector& o) {
  const double q = 1.0 - o.d2;
  return {1.0 / q, 2.0 * o.d1 / (kPi * q * q), o.d0 / (q * q) + 2.0 * o.d1 * o.d1 / (kPi * q * q * q)};
}

IntensityEstimate invert_intensity(const DensityEstimate& e, bool isotropic) {
  IntensityEstimate r = invert_intensity(e.mean, isotropic);
  const auto g = intensity_gradient(e.mean);
  double var = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) var += g[i] * g[j] * e.covariance[i][j];
  r.gamma_se = std::sqrt(std::max(0.0, var / static_cast<double>(e.reps)));
  return r;
}

BiasReport window_bias(double gamma, const GrainMoments& m, const Window& w) {
  const double t[3] = {gamma, gamma * m.ev1, gamma * m.ev2};
  const auto wv = w.volumes();
  const double v[3] = {wv.v0, wv.v1, wv.v2};
  const auto dens = miles_densities_2d(gamma, m, true);
  BiasReport r;
  r.local_mean = {isotropic_local_mean(2, 0, v, t), isotropic_local_mean(2, 1, v, t), isotropic_local_mean(2, 2, v, t)};
  r.asymptotic = {w.area() * dens.d0, w.area() * dens.d1, w.area() * dens.d2};
  r.bias = r.local_mean - r.asymptotic;
  return r;
}

}  // namespace boolmodel

#include "boolmodel/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/cubic_hermite.hpp>

namespace boolmodel {

namespace {

constexpr std::size_t kTableNodes = 513;
constexpr std::size_t kAntiderivativeNodes = 2049;

// Half the boundary length of a disk of radius r inside the open disk
// translated by d, continued to its limit at d = 0.
double disk_boundary_overlap(double r, double d) {
  if (d >= 2.0 * r) return 0.0;
  return r * std::acos(d / (2.0 * r));
}

std::vector<double> law_kinks(const ParameterLaw& l) {
  std::vector<double> k{l.lower(), l.upper()};
  for (const auto& a : l.atoms()) k.push_back(a.first);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

// Directions along which a polygon's covariogram may fail to be smooth.
std::vector<double> edge_direction_breaks(const ConvexPolygon& p) {
  std::vector<double> b{0.0, 2.0 * kPi};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 d = p.next(i) - p[i];
    for (double a : {std::atan2(d.y, d.x), std::atan2(-d.y, -d.x)}) b.push_back(a < 0.0 ? a + 2.0 * kPi : a);
  }
  std::sort(b.begin(), b.end());
  return b;
}

double angular_average(const ConvexPolygon& p, const std::function<double(double)>& f) {
  const auto breaks = edge_direction_breaks(p);
  return integrate(f, 0.0, 2.0 * kPi, 1e-13, breaks).value / (2.0 * kPi);
}

// Exit distance of the ray y + r u from the polygon, y on the boundary.
double exit_distance(const std::vector<Vec2>& v, const std::vector<Vec2>& n, Vec2 y, Vec2 u) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double den = dot(u, n[i]);
    if (den <= 1e-15) continue;
    best = std::min(best, std::max(0.0, dot(v[i] - y, n[i])) / den);
  }
  return std::isfinite(best) ? best : 0.0;
}

struct PolygonFrame {
  std::vector<Vec2> v;
  std::vector<Vec2> n;
  explicit PolygonFrame(const ConvexPolygon& p) : v(p.vertices()) {
    for (std::size_t i = 0; i < p.size(); ++i) n.push_back(outward_normal(p[i], p.next(i)));
  }
};

// Integral over the boundary (half arc length) and over K of a function
// g(y, theta, rho) where rho is the exit distance in direction theta.
template <class Inner>
Integral polygon_boundary_polar(const ConvexPolygon& p, Inner inner, double tol) {
  const PolygonFrame fr(p);
  const std::size_t n = fr.v.size();
  Integral total;
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = fr.v[e], b = fr.v[(e + 1) % n];
    const double len = norm(b - a);
    const Vec2 dir = (b - a) / len;
    const double th0 = std::atan2(dir.y, dir.x);
    Integral err_acc;
    auto over_s = [&](double s) {
      const Vec2 y = a + s * dir;
      std::vector<double> breaks;
      for (const auto& w : fr.v) {
        const Vec2 d = w - y;
        if (norm(d) < 1e-14) continue;
        double ang = std::atan2(d.y, d.x) - th0;
        ang = std::fmod(ang + 4.0 * kPi, 2.0 * kPi);
        if (ang > 0.0 && ang < kPi) breaks.push_back(th0 + ang);
      }
      auto over_theta = [&](double th) {
        const Vec2 u = unit_from_angle(th);
        return inner(u, exit_distance(fr.v, fr.n, y, u));
      };
      const Integral r = integrate(over_theta, th0, th0 + kPi, tol / (len * static_cast<double>(n)), breaks);
      err_acc.converged = err_acc.converged && r.converged;
      return r.value;
    };
    Integral edge = integrate(over_s, 0.0, len, tol / static_cast<double>(n));
    edge.converged = edge.converged && err_acc.converged;
    total += edge;
  }
  total.value *= 0.5;
  total.error *= 0.5;
  return total;
}

// Antiderivative H(rho) = int_0^rho h(r) r dr on [0, rmax], cubic Hermite.
class RadialAntiderivative {
public:
  RadialAntiderivative(const std::function<double(double)>& h, double rmax) {
    std::vector<double> x(kAntiderivativeNodes), y(kAntiderivativeNodes), dy(kAntiderivativeNodes);
    const double step = rmax / static_cast<double>(kAntiderivativeNodes - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < kAntiderivativeNodes; ++i) {
      x[i] = step * static_cast<double>(i);
      if (i > 0) acc += integrate([&](double r) { return h(r) * r; }, x[i - 1], x[i], 1e-15).value;
      y[i] = acc;
      dy[i] = h(x[i]) * x[i];
    }
    rmax_ = rmax;
    total_ = acc;
    spline_ = std::make_shared<boost::math::interpolators::cubic_hermite<std::vector<double>>>(
        std::move(x), std::move(y), std::move(dy));
  }
  double operator()(double rho) const {
    if (rho <= 0.0) return 0.0;
    if (rho >= rmax_) return total_;
    return (*spline_)(rho);
  }

private:
  double rmax_ = 0.0;
  double total_ = 0.0;
  std::shared_ptr<boost::math::interpolators::cubic_hermite<std::vector<double>>> spline_;
};

double polygon_diameter(const ConvexPolygon& p) {
  double d = 0.0;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices()) d = std::max(d, norm(a - b));
  return d;
}

// Disk of radius R: boundary x area and boundary x boundary integrals of a
// radial function, after substitutions that remove the endpoint roots.
Integral disk_boundary_area(double R, const std::function<double(double)>& h, std::span<const double> kinks,
                            double tol) {
  std::vector<double> br;
  for (double k : kinks)
    if (k > 0.0 && k < 2.0 * R) br.push_back(std::asin(k / (2.0 * R)));
  const double scale = 8.0 * kPi * R * R * R;
  auto f = [&](double phi) {
    return h(2.0 * R * std::sin(phi)) * std::sin(phi) * std::cos(phi) * (0.5 * kPi - phi);
  };
  Integral r = integrate(f, 0.0, 0.5 * kPi, tol / scale, br);
  r.value *= scale;
  r.error *= scale;
  return r;
}

Integral disk_boundary_boundary(double R, const std::function<double(double)>& h, std::span<const double> kinks,
                                double tol) {
  std::vector<double> br;
  for (double k : kinks)
    if (k > 0.0 && k < 2.0 * R) br.push_back(2.0 * std::asin(k / (2.0 * R)));
  const double scale = kPi * R * R;
  Integral r = integrate([&](double delta) { return h(2.0 * R * std::sin(0.5 * delta)); }, 0.0, kPi, tol / scale, br);
  r.value *= scale;
  r.error *= scale;
  return r;
}

double rel_mismatch(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

}  // namespace

// ---------------------------------------------------------------------------
// CovariogramFunctions

struct CovariogramFunctions::Table {
  boost::math::interpolators::cardinal_cubic_b_spline<double> g2;
  boost::math::interpolators::cardinal_cubic_b_spline<double> g1;
};

CovariogramFunctions::CovariogramFunctions(double gamma, const GrainDistribution& q)
    : gamma_(gamma), q_(q), isotropic_(q.isotropic()), cutoff_(2.0 * q.rmax()) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be finite and nonnegative");
  using Family = GrainDistribution::Family;
  if (q.family() == Family::disk) {
    for (double k : law_kinks(q.radius_law())) kinks_.push_back(2.0 * k);
  } else if (q.family() == Family::fixed && q.shape().is_disk()) {
    kinks_.push_back(2.0 * q.shape().as_disk().radius);
  } else if (q.family() == Family::rect) {
    for (double k : law_kinks(q.halfwidth_law())) kinks_.insert(kinks_.end(), {2.0 * k, -2.0 * k});
    for (double k : law_kinks(q.halfheight_law())) kinks_.insert(kinks_.end(), {2.0 * k, -2.0 * k});
    kinks_.push_back(0.0);
  }
  std::sort(kinks_.begin(), kinks_.end());
  const bool disk_law = q.family() == Family::disk || (q.family() == Family::fixed && q.shape().is_disk());
  if (!isotropic_ || disk_law) return;
  // Isotropic polygon laws: tabulate the rotation averages.
  std::vector<double> g2(kTableNodes), g1(kTableNodes);
  const double h = cutoff_ / static_cast<double>(kTableNodes - 1);
  for (std::size_t i = 0; i < kTableNodes; ++i) {
    const double r = h * static_cast<double>(i);
    g2[i] = q.expect([&](const GrainShape& k) {
      if (i == 0) return intrinsic_volumes(k).v2;
      const auto p = k.to_polygon();
      return angular_average(p, [&](double th) { return covariogram(k, r * unit_from_angle(th)); });
    });
    // c1 is discontinuous at 0; the table holds its right limit.
    const double r1 = std::max(r, 1e-9 * cutoff_);
    g1[i] = q.expect([&](const GrainShape& k) {
      const auto p = k.to_polygon();
      return angular_average(p, [&](double th) { return boundary_covariogram(k, r1 * unit_from_angle(th)); });
    });
  }
  auto t = std::make_shared<Table>(Table{{g2.begin(), g2.end(), 0.0, h}, {g1.begin(), g1.end(), 0.0, h}});
  table_ = std::move(t);
}

CovariogramFunctions CovariogramFunctions::with_gamma(double gamma) const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be finite and nonnegative");
  CovariogramFunctions c(*this);
  c.gamma_ = gamma;
  return c;
}

double CovariogramFunctions::c2(double r) const {
  if (!isotropic_) throw PreconditionError("radial covariogram requested for an anisotropic law");
  r = std::abs(r);
  if (r >= cutoff_ || gamma_ == 0.0) return 0.0;
  if (table_) return gamma_ * std::max(0.0, table_->g2(r));
  if (q_.family() == GrainDistribution::Family::fixed) return gamma_ * disk_lens_area(q_.shape().as_disk().radius, r);
  const auto& law = q_.radius_law();
  const double kink[1] = {0.5 * r};
  return gamma_ * law.expect([&](double R) { return disk_lens_area(R, r); }, kink);
}

double CovariogramFunctions::c1(double r) const {
  if (!isotropic_) throw PreconditionError("radial boundary covariogram requested for an anisotropic law");
  r = std::abs(r);
  if (r >= cutoff_ || gamma_ == 0.0) return 0.0;
  if (table_) return gamma_ * std::max(0.0, table_->g1(r));
  if (q_.family() == GrainDistribution::Family::fixed)
    return gamma_ * disk_boundary_overlap(q_.shape().as_disk().radius, r);
  const double kink[1] = {0.5 * r};
  return gamma_ * q_.radius_law().expect([&](double R) { return disk_boundary_overlap(R, r); }, kink);
}

double CovariogramFunctions::c2(Vec2 t) const {
  if (isotropic_) return c2(norm(t));
  if (gamma_ == 0.0) return 0.0;
  return gamma_ * q_.expect([&](const GrainShape& k) { return covariogram(k, t); });
}

double CovariogramFunctions::c1(Vec2 t) const {
  if (isotropic_) return c1(norm(t));
  if (gamma_ == 0.0) return 0.0;
  return gamma_ * q_.expect([&](const GrainShape& k) { return boundary_covariogram(k, t); });
}

// ---------------------------------------------------------------------------
// Single-grain measure integrals

Integral boundary_area_integral(const GrainShape& k, const std::function<double(Vec2)>& h, double tol) {
  if (k.is_disk()) {
    // Polar coordinates about each boundary point, integrated over the
    // boundary angle; the disk is handled as the limit of its boundary.
    const double R = k.as_disk().radius;
    auto over_alpha = [&](double alpha) {
      const Vec2 y = R * unit_from_angle(alpha);
      const double th0 = alpha + 0.5 * kPi;
      auto over_theta = [&](double th) {
        const Vec2 u = unit_from_angle(th);
        const double rho = std::max(0.0, -2.0 * dot(y, u));
        return integrate([&](double r) { return h(r * u) * r; }, 0.0, rho, tol).value;
      };
      return integrate(over_theta, th0, th0 + kPi, tol).value;
    };
    Integral r = integrate(over_alpha, 0.0, 2.0 * kPi, tol);
    r.value *= 0.5 * R;
    r.error *= 0.5 * R;
    return r;
  }
  return polygon_boundary_polar(
      k.to_polygon(),
      [&](Vec2 u, double rho) { return integrate([&](double r) { return h(r * u) * r; }, 0.0, rho, tol).value; },
      tol);
}

Integral boundary_area_integral_radial(const GrainShape& k, const std::function<double(double)>& h, double tol) {
  if (k.is_disk()) return disk_boundary_area(k.as_disk().radius, h, {}, tol);
  const auto p = k.to_polygon();
  const RadialAntiderivative H(h, polygon_diameter(p));
  return polygon_boundary_polar(p, [&](Vec2, double rho) { return H(rho); }, tol);
}

Integral boundary_boundary_integral(const GrainShape& k, const std::function<double(Vec2)>& h, double tol) {
  if (k.is_disk()) {
    const double R = k.as_disk().radius;
    auto outer = [&](double a) {
      return integrate([&](double b) { return h(R * (unit_from_angle(b) - unit_from_angle(a))); }, 0.0, 2.0 * kPi,
                       tol, std::array<double, 1>{a})
          .value;
    };
    Integral r = integrate(outer, 0.0, 2.0 * kPi, tol);
    r.value *= 0.25 * R * R;
    r.error *= 0.25 * R * R;
    return r;
  }
  const auto p = k.to_polygon();
  const std::size_t n = p.size();
  Integral total;
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = p[e], da = p.next(e) - p[e];
    const double la = norm(da);
    for (std::size_t f = 0; f < n; ++f) {
      const Vec2 b = p[f], db = p.next(f) - p[f];
      const double lb = norm(db);
      if (e == f) {
        const Vec2 u = da / la;
        total += integrate([&](double s) { return (la - std::abs(s)) * h(s * u); }, -la, la, tol,
                           std::array<double, 1>{0.0});
        continue;
      }
      auto outer = [&](double s) {
        const Vec2 y = a + da * s;
        return integrate([&](double t) { return h(b + db * t - y); }, 0.0, 1.0, tol).value;
      };
      Integral r = integrate(outer, 0.0, 1.0, tol);
      r.value *= la * lb;
      r.error *= la * lb;
      total += r;
    }
  }
  total.value *= 0.25;
  total.error *= 0.25;
  return total;
}

Integral boundary_boundary_integral_radial(const GrainShape& k, const std::function<double(double)>& h,
                                           double tol) {
  if (k.is_disk()) return disk_boundary_boundary(k.as_disk().radius, h, {}, tol);
  return boundary_boundary_integral(k, [&](Vec2 v) { return h(norm(v)); }, tol);
}

// ---------------------------------------------------------------------------
// rho values

Integral rho_22(const CovariogramFunctions& c, double tol) {
  if (c.gamma() == 0.0) return {};
  const double R = c.cutoff();
  tol *= std::max(c.c2(Vec2{0.0, 0.0}), 1e-300);
  if (c.isotropic()) {
    Integral r = integrate([&](double s) { return std::expm1(c.c2(s)) * s; }, 0.0, R, tol / (2.0 * kPi), c.kinks());
    r.value *= 2.0 * kPi;
    r.error *= 2.0 * kPi;
    return r;
  }
  bool ok = true;
  auto outer = [&](double x) {
    const Integral in = integrate([&](double y) { return std::expm1(c.c2(Vec2{x, y})); }, -R, R, tol / (4.0 * R),
                                  c.kinks());
    ok = ok && in.converged;
    return in.value;
  };
  Integral r = integrate(outer, -R, R, tol, c.kinks());
  r.converged = r.converged && ok;
  return r;
}

Integral rho_22(double gamma, const GrainDistribution& q, double tol) {
  return rho_22(CovariogramFunctions(gamma, q), tol);
}

Integral sigma_volume(double gamma, const GrainDistribution& q, double tol) {
  Integral r = rho_22(gamma, q, tol);
  const double ev2 = q.expect([](const GrainShape& k) { return intrinsic_volumes(k).v2; });
  const double s = std::exp(-2.0 * gamma * ev2);
  r.value *= s;
  r.error *= s;
  return r;
}

double rho_0i(double gamma, const GrainMoments& m, int i, bool isotropic) {
  if (i < 0 || i > 2) throw PreconditionError("rho_0i index must be 0, 1 or 2");
  const double t[3] = {gamma, gamma * m.ev1, gamma * m.ev2};
  if (i == 2) return std::expm1(t[2]);
  if (!isotropic) throw PreconditionError("rho(V0, V_i) for i < 2 requires an isotropic law");
  constexpr int d = 2;
  double sum = 0.0;
  double lfact = 1.0;
  for (int l = 1; l <= d - i; ++l) {
    lfact *= l;
    sum += composition_sum(d, l, (l - 1) * d + i, i, d - 1, t) / lfact;
  }
  return std::exp(t[2]) * kinematic_constant(d, i) * sum;
}

namespace {

// gamma E_Q of a per-shape integral, with the largest error seen.
template <class PerShape>
Integral expect_integral(const CovariogramFunctions& c, PerShape per_shape) {
  double worst = 0.0;
  bool ok = true;
  const double v = c.grains().expect([&](const GrainShape& k) {
    const Integral r = per_shape(k);
    worst = std::max(worst, r.error);
    ok = ok && r.converged;
    return r.value;
  });
  return {c.gamma() * v, c.gamma() * worst, ok};
}

// E[V_i V_j] of the typical grain.
double moment_scale(const CovariogramFunctions& c, int i, int j) {
  return c.grains().expect([&](const GrainShape& k) {
    const auto v = intrinsic_volumes(k);
    return component(v, i) * component(v, j);
  });
}

}  // namespace

Integral rho_12(const CovariogramFunctions& c, double tol) {
  if (c.gamma() == 0.0) return {};
  tol *= moment_scale(c, 1, 2);
  if (c.isotropic()) {
    auto h = [&](double r) { return std::exp(c.c2(r)); };
    return expect_integral(c, [&](const GrainShape& k) {
      if (k.is_disk()) return disk_boundary_area(k.as_disk().radius, h, c.kinks(), tol);
      return boundary_area_integral_radial(k, h, tol);
    });
  }
  auto h = [&](Vec2 v) { return std::exp(c.c2(v)); };
  return expect_integral(c, [&](const GrainShape& k) { return boundary_area_integral(k, h, tol); });
}

std::array<Integral, 2> rho_11_terms(const CovariogramFunctions& c, double tol) {
  if (c.gamma() == 0.0) return {};
  tol *= moment_scale(c, 1, 1);
  if (c.isotropic()) {
    auto h1 = [&](double r) { return c.c1(r) * std::exp(c.c2(r)); };
    auto h0 = [&](double r) { return std::exp(c.c2(r)); };
    const Integral a = expect_integral(c, [&](const GrainShape& k) {
      if (k.is_disk()) return disk_boundary_area(k.as_disk().radius, h1, c.kinks(), tol);
      return boundary_area_integral_radial(k, h1, tol);
    });
    const Integral b = expect_integral(c, [&](const GrainShape& k) {
      if (k.is_disk()) return disk_boundary_boundary(k.as_disk().radius, h0, c.kinks(), tol);
      return boundary_boundary_integral_radial(k, h0, tol);
    });
    return {a, b};
  }
  auto h1 = [&](Vec2 v) { return c.c1(v) * std::exp(c.c2(v)); };
  auto h0 = [&](Vec2 v) { return std::exp(c.c2(v)); };
  return {expect_integral(c, [&](const GrainShape& k) { return boundary_area_integral(k, h1, tol); }),
          expect_integral(c, [&](const GrainShape& k) { return boundary_boundary_integral(k, h0, tol); })};
}

Integral rho_11(const CovariogramFunctions& c, double tol) {
  auto t = rho_11_terms(c, tol);
  Integral r = t[0];
  r += t[1];
  return r;
}

// ---------------------------------------------------------------------------
// Assembly

double p_polynomial_2d(int j, int k, double gamma, double ev1) {
  const double t[3] = {gamma, gamma * ev1, 0.0};
  return p_polynomial(2, j, k, t);
}

double phi_star(int j, const IntrinsicVolumes2D& k, double gamma, const GrainMoments& m) {
  if (j < 0 || j > 2) throw PreconditionError("phi_star index must be 0, 1 or 2");
  const double q = std::exp(-gamma * m.ev2);
  const double v[3] = {k.v0, k.v1, k.v2};
  double s = 0.0;
  for (int l = j; l <= 2; ++l) s += v[l] * p_polynomial_2d(j, l, gamma, m.ev1);
  return -q * s;
}

double phi_star(int j, const GrainShape& k, double gamma, const GrainMoments& m) {
  return phi_star(j, intrinsic_volumes(k), gamma, m);
}

bool is_positive_definite(const CovMatrix& m) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m.s[i][j];
  Eigen::LLT<Eigen::Matrix3d> llt(a);
  return llt.info() == Eigen::Success;
}

CovarianceReport sigma_matrix(const CovariogramFunctions& c, double tol) {
  if (!c.isotropic()) throw PreconditionError("sigma_matrix requires an isotropic grain law");
  const auto& q = c.grains();
  const GrainMoments m = grain_moments(q);
  const double gamma = c.gamma();
  const double p = volume_fraction(gamma, m.ev2);
  const double q2 = (1.0 - p) * (1.0 - p);
  const double t1 = gamma * m.ev1;

  CovarianceReport rep;
  auto& rho = rep.rho;
  const Integral r22 = rho_22(c, tol);
  const Integral r12 = rho_12(c, tol);
  const auto r11 = rho_11_terms(c, tol);
  for (const auto* r : {&r22, &r12, &r11[0], &r11[1]})
    if (!r->converged)
      throw std::runtime_error("quadrature did not converge (achieved error " + std::to_string(r->error) + ")");
  rho.rho11_m12 = r11[0].value;
  rho.rho11_m11 = r11[1].value;
  rho.rho[2][2] = r22.value;
  rho.rho[1][2] = rho.rho[2][1] = r12.value;
  rho.rho[1][1] = r11[0].value + r11[1].value;
  for (int i = 0; i < 3; ++i) rho.rho[0][i] = rho.rho[i][0] = rho_0i(gamma, m, i, true);
  rho.error[2][2] = r22.error;
  rho.error[1][2] = rho.error[2][1] = r12.error;
  rho.error[1][1] = r11[0].error + r11[1].error;

  double P[3][3] = {};
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k) P[j][k] = p_polynomial_2d(j, k, gamma, m.ev1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = i; k < 3; ++k)
        for (int l = j; l < 3; ++l) s += P[i][k] * P[j][l] * rho.rho[k][l];
      rep.sigma.s[i][j] = q2 * s;
    }
  // Exact symmetry.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) rep.sigma.s[j][i] = rep.sigma.s[i][j];

  // Direct forms of the (1,2), (1,1) and (0,2) entries.
  const double s12 = q2 * (r12.value - t1 * r22.value);
  const double s11 = q2 * (t1 * t1 * r22.value + r11[0].value - 2.0 * t1 * r12.value + r11[1].value);
  const double s02 =
      p * (1.0 - p) - q2 * (gamma - t1 * t1 / kPi) * r22.value - q2 * (2.0 * t1 / kPi) * r12.value;
  rep.cross_check = {rel_mismatch(s12, rep.sigma.s[1][2]), rel_mismatch(s11, rep.sigma.s[1][1]),
                     rel_mismatch(s02, rep.sigma.s[0][2])};
  const char* names[3] = {"(1,2)", "(1,1)", "(0,2)"};
  for (int k = 0; k < 3; ++k)
    if (!(rep.cross_check[k] <= kCrossCheckTolerance))
      throw AssemblyError(std::string("covariance assembly disagrees with the direct formula for entry ") + names[k] +
                          " (relative mismatch " + std::to_string(rep.cross_check[k]) + ")");
  rep.positive_definite = is_positive_definite(rep.sigma);
  return rep;
}

CovarianceReport sigma_matrix(double gamma, const GrainDistribution& q, double tol) {
  return sigma_matrix(CovariogramFunctions(gamma, q), tol);
}

}  // namespace boolmodel

#pragma once

#include <array>
#include <functional>
#include <memory>

#include "boolmodel/moments.hpp"
#include "boolmodel/process.hpp"
#include "boolmodel/quadrature.hpp"

namespace boolmodel {

/// gamma times the expected covariogram (c2) and expected boundary
/// covariogram (c1) of the typical grain. Radial when Q is isotropic.
class CovariogramFunctions {
public:
  /// Rotation averages for isotropic polygon laws are tabulated once at
  /// construction; disk laws use closed forms.
  CovariogramFunctions(double gamma, const GrainDistribution& q);
  /// Same grain law at another intensity; shares the tabulated profiles.
  CovariogramFunctions with_gamma(double gamma) const;

  double gamma() const { return gamma_; }
  bool isotropic() const { return isotropic_; }
  /// Both functions vanish beyond this distance (2 rmax).
  double cutoff() const { return cutoff_; }
  double c2(Vec2 t) const;
  double c1(Vec2 t) const;
  /// Radial profiles; isotropic laws only.
  double c2(double r) const;
  double c1(double r) const;
  /// Distances where the radial profiles may have kinks.
  const std::vector<double>& kinks() const { return kinks_; }
  const GrainDistribution& grains() const { return q_; }

private:
  struct Table;
  double gamma_;
  GrainDistribution q_;
  bool isotropic_;
  double cutoff_;
  std::vector<double> kinks_;
  std::shared_ptr<const Table> table_;
};

// Quadrature tolerances below are relative to the natural scale of each
// integral (its small-gamma limit), e.g. c2(0) for rho_22.

/// rho(V_i, V_j) for i, j in {0, 1, 2} with quadrature error estimates.
struct RhoTable {
  std::array<std::array<double, 3>, 3> rho{};
  std::array<std::array<double, 3>, 3> error{};
  /// The two parts of rho(V1, V1): the C1-weighted M12 term and the M11 term.
  double rho11_m12 = 0.0;
  double rho11_m11 = 0.0;
};

struct CovMatrix {
  std::array<std::array<double, 3>, 3> s{};
  double operator()(int i, int j) const { return s[i][j]; }
};

/// Integral of (e^{c2} - 1) over the plane.
Integral rho_22(const CovariogramFunctions& c, double tol = 1e-10);
Integral rho_22(double gamma, const GrainDistribution& q, double tol = 1e-10);
/// (1 - p)^2 rho_22.
Integral sigma_volume(double gamma, const GrainDistribution& q, double tol = 1e-10);

/// rho(V0, V_i) from the grain densities; i < 2 requires isotropy.
double rho_0i(double gamma, const GrainMoments& m, int i, bool isotropic = true);

/// Integral of e^{c2(z - y)} over the measure M_{1,2}.
Integral rho_12(const CovariogramFunctions& c, double tol = 1e-10);
/// The C1-weighted M_{1,2} term and the M_{1,1} term of rho(V1, V1).
std::array<Integral, 2> rho_11_terms(const CovariogramFunctions& c, double tol = 1e-10);
Integral rho_11(const CovariogramFunctions& c, double tol = 1e-10);

/// Integral over the boundary of K (half arc length) and over K of h(z - y).
Integral boundary_area_integral(const GrainShape& k, const std::function<double(Vec2)>& h, double tol = 1e-12);
/// Double integral over the boundary of K (half arc length each) of h(z - y).
Integral boundary_boundary_integral(const GrainShape& k, const std::function<double(Vec2)>& h, double tol = 1e-12);
/// Radial versions, h depending on |z - y| only.
Integral boundary_area_integral_radial(const GrainShape& k, const std::function<double(double)>& h, double tol = 1e-12);
Integral boundary_boundary_integral_radial(const GrainShape& k, const std::function<double(double)>& h,
                                           double tol = 1e-12);

/// Planar P_{j,k}(t0, t1) with t0 = gamma, t1 = gamma E V1.
double p_polynomial_2d(int j, int k, double gamma, double ev1);

/// V*_j(K) = E V_j(Z cap K) - V_j(K), isotropic for j < 2.
double phi_star(int j, const GrainShape& k, double gamma, const GrainMoments& m);
double phi_star(int j, const IntrinsicVolumes2D& k, double gamma, const GrainMoments& m);

struct CovarianceReport {
  CovMatrix sigma;
  RhoTable rho;
  /// Relative mismatch of entries (1,2), (1,1), (0,2) against the direct formulas.
  std::array<double, 3> cross_check{};
  bool positive_definite = false;
};

/// Raised when an internal consistency check of the assembly fails.
class AssemblyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline constexpr double kCrossCheckTolerance = 1e-6;

/// Full asymptotic covariance matrix of (V0, V1, V2) densities for an
/// isotropic planar law with interior grains.
CovarianceReport sigma_matrix(double gamma, const GrainDistribution& q, double tol = 1e-10);
CovarianceReport sigma_matrix(const CovariogramFunctions& c, double tol = 1e-10);

/// Cholesky test.
bool is_positive_definite(const CovMatrix& m);

}  // namespace boolmodel

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "boolmodel/process.hpp"
#include "boolmodel/union_measure.hpp"

namespace boolmodel {

/// Moments of the typical grain. `mixed` is the translative mixed term
/// E[A(K + M*) - A(K) - A(M)] for independent K, M ~ Q.
struct GrainMoments {
  double ev1 = 0.0;
  double ev2 = 0.0;
  double ev1sq = 0.0;
  double ev2sq = 0.0;
  double ev1v2 = 0.0;
  std::optional<double> mixed;
};

/// Densities of V0, V1, V2 of the union set per unit area.
struct DensityVector {
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Moments of Q; mixed is filled in for every family (kinematic value for
/// isotropic laws, translative closed forms otherwise).
GrainMoments grain_moments(const GrainDistribution& q);

/// Rotation average of A(K + rot(M*)) - A(K) - A(M) over a uniform angle.
/// Integrates piecewise between the angles where edge normals align.
double rotation_averaged_mixed_area(const GrainShape& k, const GrainShape& m);

double volume_fraction(double gamma, double ev2);

/// Planar densities. The isotropic path uses mixed = 2 ev1^2 / pi, the
/// translative path requires moments.mixed.
DensityVector miles_densities_2d(double gamma, const GrainMoments& moments, bool isotropic);

/// kappa_i, volume of the unit ball in R^i.
double unit_ball_volume(int i);
/// c^i_j = i! kappa_i / (j! kappa_j).
double kinematic_constant(int i, int j);

/// Sum over ordered tuples (m_1..m_s) with entries in [lo, hi] and
/// m_1 + ... + m_s = total of the products c^{m_i}_d t_{m_i}.
double composition_sum(int d, int s, int total, int lo, int hi, std::span<const double> t);

/// Density of V_j of an isotropic Boolean model in R^d from the grain
/// densities t_k = gamma E V_k(Z0), k = 0..d (t_0 = gamma).
double isotropic_density(int d, int j, std::span<const double> t);

/// The polynomial P_{j,k}(t_j, ..., t_{d-1}) in R^d; P_{j,j} = 1.
double p_polynomial(int d, int j, int k, std::span<const double> t);

/// E V_j(Z intersected with K0) for an isotropic model in R^d, given the
/// intrinsic volumes v[0..d] of the convex body K0.
double isotropic_local_mean(int d, int j, std::span<const double> v, std::span<const double> t);

/// (V3, V2, V1, V0) densities for balls in R^3 with radius moments
/// E R, E R^2, E R^3.
std::array<double, 4> ball_densities_3d(double gamma, double er, double er2, double er3);

/// Per-replicate densities and their sample covariance.
struct DensityEstimate {
  DensityVector mean;
  DensityVector standard_error;
  std::array<std::array<double, 3>, 3> covariance{};  // of a single replicate, per component
  std::size_t reps = 0;
};

/// Averages per-window density vectors (>= 2 replicates).
DensityEstimate estimate_densities(std::span<const DensityVector> per_window);

/// Unbiased density of one window from the arrangement statistics:
/// tangent-point count and interior boundary length, both per window area.
DensityVector window_densities(const UnionStatistics& stats, const Window& w);

struct IntensityEstimate {
  double gamma = 0.0;
  double ev1 = 0.0;
  double ev2 = 0.0;
  double gamma_se = 0.0;  // delta method, only when a covariance is supplied
};

/// Inverts the isotropic planar formulas. Throws PreconditionError for
/// d2 >= 1, for anisotropic input, and when the estimated gamma is not positive.
IntensityEstimate invert_intensity(const DensityVector& observed, bool isotropic = true);
/// Same, with the delta-method standard error from the covariance of the
/// mean density vector.
IntensityEstimate invert_intensity(const DensityEstimate& observed, bool isotropic = true);

/// Gradient of the estimated gamma with respect to (d0, d1, d2).
std::array<double, 3> intensity_gradient(const DensityVector& observed);

/// Predicted boundary bias of the naive estimator for a rectangular window:
/// E V_j(Z cap W) - area(W) * density_j, isotropic case.
struct BiasReport {
  FunctionalVector local_mean;
  FunctionalVector asymptotic;  // area times density
  FunctionalVector bias;
};
BiasReport window_bias(double gamma, const GrainMoments& m, const Window& w);

}  // namespace boolmodel

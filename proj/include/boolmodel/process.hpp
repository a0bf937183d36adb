#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "boolmodel/geometry.hpp"
#include "boolmodel/rng.hpp"
#include "boolmodel/union_measure.hpp"

namespace boolmodel {

/// Law of a scalar grain parameter with bounded support.
class ParameterLaw {
public:
  enum class Kind { constant, uniform, discrete };

  ParameterLaw() = default;  // constant 1
  static ParameterLaw constant(double v);
  static ParameterLaw uniform(double a, double b);
  /// Atoms with nonnegative weights; weights are normalized.
  static ParameterLaw discrete(std::vector<double> values, std::vector<double> weights);

  Kind kind() const { return kind_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  double sample(Rng& rng) const;
  /// E f(X). Uniform laws use Gauss-Legendre on each piece between the
  /// given kinks of f, refined until successive orders agree to tol.
  double expect(const std::function<double(double)>& f, std::span<const double> kinks = {},
                double tol = 1e-13) const;
  double moment(int k) const;

private:
  Kind kind_ = Kind::constant;
  double lo_ = 1.0, hi_ = 1.0;
  std::vector<std::pair<double, double>> atoms_{{1.0, 1.0}};  // (value, probability)
};

/// Law Q of the typical grain.
class GrainDistribution {
public:
  enum class Family { fixed, disk, rect };

  /// A single shape, optionally uniformly rotated.
  static GrainDistribution fixed(GrainShape shape, bool rotate = false, std::optional<double> rmax = {});
  static GrainDistribution disks(ParameterLaw radius, std::optional<double> rmax = {});
  /// Rectangles with independent half-side laws.
  static GrainDistribution rects(ParameterLaw halfwidth, ParameterLaw halfheight, bool rotate = false,
                                 std::optional<double> rmax = {});

  Family family() const { return family_; }
  const GrainShape& shape() const { return *shape_; }
  const ParameterLaw& radius_law() const { return radius_; }
  const ParameterLaw& halfwidth_law() const { return halfwidth_; }
  const ParameterLaw& halfheight_law() const { return halfheight_; }
  bool rotate() const { return rotate_; }
  /// Almost-sure bound on the circumradius used to dilate the window.
  double rmax() const { return rmax_; }
  /// Largest circumradius the parameter laws can produce.
  double circumradius_sup() const;
  /// True when the law of the grain is rotation invariant.
  bool isotropic() const;

  GrainShape draw(Rng& rng) const;
  /// E_Q f(K) over the parameter laws, ignoring rotation.
  double expect(const std::function<double(const GrainShape&)>& f, double tol = 1e-13) const;

private:
  void validate_bound();

  Family family_ = Family::disk;
  std::optional<GrainShape> shape_;
  ParameterLaw radius_, halfwidth_, halfheight_;
  bool rotate_ = false;
  double rmax_ = 0.0;
};

struct ModelConfig {
  double gamma = 0.0;
  GrainDistribution grains = GrainDistribution::disks(ParameterLaw::constant(1.0));
  Window window = Window::make({0.0, 0.0}, {1.0, 1.0});
  std::uint64_t seed = 0;

  void validate() const;
  /// Area of the window dilated by the disk of radius rmax.
  double dilated_area() const;
};

/// One realization restricted to everything that can hit the window.
struct GermGrainSample {
  std::vector<PlacedGrain> placed;
  ModelConfig config;
  std::uint64_t replicate = 0;
};

/// Deterministic in (config.seed, replicate).
GermGrainSample sample(const ModelConfig& config, std::uint64_t replicate);

/// Compact test set for the capacity functional; no shape means a point.
struct Probe {
  Vec2 center;
  std::optional<GrainShape> shape;
};

/// exp(-gamma E A(Z0 + C*)).
double theory_capacity(double gamma, const GrainDistribution& grains, const Probe& probe);
inline double theory_capacity(const ModelConfig& c, const Probe& p) { return theory_capacity(c.gamma, c.grains, p); }
/// E A(Z0 + C*) for the probe shape (E V2 for a point).
double expected_dilation_area(const GrainDistribution& grains, const Probe& probe);

struct CapacityEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t reps = 0;
};

/// Fraction of replicates in which no grain meets the probe.
CapacityEstimate empirical_capacity(const ModelConfig& config, const Probe& probe, std::size_t reps,
                                    unsigned threads = 1);
bool probe_hits(const PlacedGrain& grain, const Probe& probe);

}  // namespace boolmodel

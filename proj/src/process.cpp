#include "boolmodel/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boolmodel/parallel.hpp"
#include "boolmodel/quadrature.hpp"

namespace boolmodel {

// ---------------------------------------------------------------------------
// ParameterLaw

ParameterLaw ParameterLaw::constant(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError("constant parameter must be positive and finite");
  ParameterLaw l;
  l.kind_ = Kind::constant;
  l.lo_ = l.hi_ = v;
  l.atoms_ = {{v, 1.0}};
  return l;
}

ParameterLaw ParameterLaw::uniform(double a, double b) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
    throw PreconditionError("uniform parameter law needs 0 < a < b < infinity");
  ParameterLaw l;
  l.kind_ = Kind::uniform;
  l.lo_ = a;
  l.hi_ = b;
  l.atoms_.clear();
  return l;
}

ParameterLaw ParameterLaw::discrete(std::vector<double> values, std::vector<double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw PreconditionError("discrete law needs matching nonempty values and weights");
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw PreconditionError("discrete law values must be positive and finite");
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw PreconditionError("discrete law weights must be nonnegative");
    total += weights[i];
  }
  if (!(total > 0.0)) throw PreconditionError("discrete law weights sum to zero");
  ParameterLaw l;
  l.kind_ = Kind::discrete;
  l.lo_ = *std::min_element(values.begin(), values.end());
  l.hi_ = *std::max_element(values.begin(), values.end());
  l.atoms_.clear();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (weights[i] > 0.0) l.atoms_.emplace_back(values[i], weights[i] / total);
  return l;
}

double ParameterLaw::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::constant:
      return lo_;
    case Kind::uniform:
      return rng.uniform(lo_, hi_);
    case Kind::discrete: {
      const double u = rng.uniform();
      double acc = 0.0;
      for (const auto& [v, w] : atoms_) {
        acc += w;
        if (u < acc) return v;
      }
      return atoms_.back().first;
    }
  }
  return lo_;
}

double ParameterLaw::expect(const std::function<double(double)>& f, std::span<const double> kinks,
                            double tol) const {
  if (kind_ != Kind::uniform) {
    double s = 0.0;
    for (const auto& [v, w] : atoms_) s += w * f(v);
    return s;
  }
  std::vector<double> pts{lo_};
  for (double k : kinks)
    if (k > lo_ && k < hi_) pts.push_back(k);
  pts.push_back(hi_);
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += gauss_legendre(f, pts[i], pts[i + 1], tol).value;
  return s / (hi_ - lo_);
}

double ParameterLaw::moment(int k) const {
  if (kind_ == Kind::uniform)
    return (std::pow(hi_, k + 1) - std::pow(lo_, k + 1)) / ((k + 1) * (hi_ - lo_));
  return expect([k](double x) { return std::pow(x, k); });
}

// ---------------------------------------------------------------------------
// GrainDistribution

GrainDistribution GrainDistribution::fixed(GrainShape shape, bool rotate, std::optional<double> rmax) {
  GrainDistribution d;
  d.family_ = Family::fixed;
  d.rotate_ = rotate && !shape.is_disk();
  d.shape_ = std::move(shape);
  d.rmax_ = rmax.value_or(d.circumradius_sup());
  d.validate_bound();
  return d;
}

GrainDistribution GrainDistribution::disks(ParameterLaw radius, std::optional<double> rmax) {
  GrainDistribution d;
  d.family_ = Family::disk;
  d.radius_ = std::move(radius);
  d.rmax_ = rmax.value_or(d.circumradius_sup());
  d.validate_bound();
  return d;
}

GrainDistribution GrainDistribution::rects(ParameterLaw halfwidth, ParameterLaw halfheight, bool rotate,
                                           std::optional<double> rmax) {
  GrainDistribution d;
  d.family_ = Family::rect;
  d.halfwidth_ = std::move(halfwidth);
  d.halfheight_ = std::move(halfheight);
  d.rotate_ = rotate;
  d.rmax_ = rmax.value_or(d.circumradius_sup());
  d.validate_bound();
  return d;
}

void GrainDistribution::validate_bound() {
  if (!std::isfinite(rmax_) || !(rmax_ > 0.0)) throw PreconditionError("rmax must be positive and finite");
  if (rmax_ < circumradius_sup() * (1.0 - 1e-12))
    throw PreconditionError("rmax is smaller than the largest possible grain circumradius");
}

double GrainDistribution::circumradius_sup() const {
  switch (family_) {
    case Family::fixed:
      return circumradius(*shape_);
    case Family::disk:
      return radius_.upper();
    case Family::rect:
      return std::hypot(halfwidth_.upper(), halfheight_.upper());
  }
  return 0.0;
}

bool GrainDistribution::isotropic() const {
  if (family_ == Family::disk) return true;
  if (family_ == Family::fixed && shape_->is_disk()) return true;
  return rotate_;
}

GrainShape GrainDistribution::draw(Rng& rng) const {
  GrainShape s = [&] {
    switch (family_) {
      case Family::disk:
        return GrainShape::disk(radius_.sample(rng));
      case Family::rect: {
        const double w = halfwidth_.sample(rng);
        return GrainShape::rect(w, halfheight_.sample(rng));
      }
      case Family::fixed:
        break;
    }
    return *shape_;
  }();
  if (rotate_) s = s.rotated(rng.uniform(0.0, 2.0 * kPi));
  return s;
}

double GrainDistribution::expect(const std::function<double(const GrainShape&)>& f, double tol) const {
  switch (family_) {
    case Family::fixed:
      return f(*shape_);
    case Family::disk:
      return radius_.expect([&](double r) { return f(GrainShape::disk(r)); }, {}, tol);
    case Family::rect:
      return halfwidth_.expect(
          [&](double w) {
            return halfheight_.expect([&](double h) { return f(GrainShape::rect(w, h)); }, {}, tol);
          },
          {}, tol);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Model and sampling

void ModelConfig::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be finite and nonnegative");
  Window::make(window.lo, window.hi);
}

double ModelConfig::dilated_area() const {
  const double r = grains.rmax();
  return window.area() + 2.0 * r * (window.width() + window.height()) + kPi * r * r;
}

GermGrainSample sample(const ModelConfig& config, std::uint64_t replicate) {
  config.validate();
  Rng rng(config.seed, replicate);
  const double r = config.grains.rmax();
  const Vec2 lo = config.window.lo - Vec2{r, r}, hi = config.window.hi + Vec2{r, r};
  const double box_area = (hi.x - lo.x) * (hi.y - lo.y);
  // Poisson in the bounding box, thinned to the rounded dilation; the
  // retained count is Poisson with mean gamma times the dilated area.
  const std::uint64_t n = rng.poisson(config.gamma * box_area);
  GermGrainSample out{{}, config, replicate};
  out.placed.reserve(static_cast<std::size_t>(static_cast<double>(n) * config.dilated_area() / box_area) + 8);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Vec2 x{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
    GrainShape s = config.grains.draw(rng);
    const double dx = std::max({config.window.lo.x - x.x, 0.0, x.x - config.window.hi.x});
    const double dy = std::max({config.window.lo.y - x.y, 0.0, x.y - config.window.hi.y});
    if (dx * dx + dy * dy > r * r) continue;
    out.placed.push_back({x, std::move(s)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Capacity functional

double expected_dilation_area(const GrainDistribution& grains, const Probe& probe) {
  if (!probe.shape) return grains.expect([](const GrainShape& k) { return intrinsic_volumes(k).v2; });
  const GrainShape& c = *probe.shape;
  if (grains.isotropic()) {
    // Principal kinematic formula for the rotation average.
    const auto vc = intrinsic_volumes(c);
    const double ev1 = grains.expect([](const GrainShape& k) { return intrinsic_volumes(k).v1; });
    const double ev2 = grains.expect([](const GrainShape& k) { return intrinsic_volumes(k).v2; });
    return ev2 + vc.v2 + 2.0 * ev1 * vc.v1 / kPi;
  }
  return grains.expect([&](const GrainShape& k) { return minkowski_sum_area(k, c); });
}

double theory_capacity(double gamma, const GrainDistribution& grains, const Probe& probe) {
  if (!(gamma >= 0.0)) throw PreconditionError("gamma must be nonnegative");
  return std::exp(-gamma * expected_dilation_area(grains, probe));
}

bool probe_hits(const PlacedGrain& grain, const Probe& probe) {
  const double reach = circumradius(grain.shape) + (probe.shape ? circumradius(*probe.shape) : 0.0);
  if (norm(grain.center - probe.center) > reach) return false;
  if (!probe.shape) return grain.shape.contains(probe.center - grain.center);
  const std::vector<PlacedGrain> pair{grain, {probe.center, *probe.shape}};
  return !intersect_convex(pair, nullptr).empty();
}

CapacityEstimate empirical_capacity(const ModelConfig& config, const Probe& probe, std::size_t reps,
                                    unsigned threads) {
  if (reps < 2) throw PreconditionError("empirical_capacity needs at least 2 replicates");
  const double cr = probe.shape ? circumradius(*probe.shape) : 0.0;
  const auto& w = config.window;
  const double clearance = std::min({probe.center.x - cr - w.lo.x, w.hi.x - probe.center.x - cr,
                                     probe.center.y - cr - w.lo.y, w.hi.y - probe.center.y - cr});
  if (clearance < config.grains.rmax())
    throw PreconditionError("probe must lie at least rmax inside the window");
  std::vector<std::uint8_t> empty(reps, 0);
  parallel_for(reps, threads, [&](std::size_t i) {
    const auto s = sample(config, i);
    empty[i] = std::none_of(s.placed.begin(), s.placed.end(),
                            [&](const PlacedGrain& g) { return probe_hits(g, probe); });
  });
  const double n = static_cast<double>(reps);
  const double p = std::accumulate(empty.begin(), empty.end(), 0.0) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), reps};
}

}  // namespace boolmodel

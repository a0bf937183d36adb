#include "boolmodel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace boolmodel {

namespace {

constexpr std::size_t kMaxSegments = 4000;

template <unsigned N>
double gl(const Integrand& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk(const Integrand& f, double a, double b) {
  Segment s{a, b, 0.0, 0.0, 0.0};
  s.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &s.error, &s.l1);
  return s;
}

}  // namespace

Integral integrate(const Integrand& f, double a, double b, double tol, std::span<const double> breaks) {
  if (!(b > a)) return {};
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  // Globally adaptive: always bisect the segment with the largest error.
  std::priority_queue<Segment> heap;
  double err = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    const Segment s = gk(f, pts[i], pts[i + 1]);
    err += s.error;
    l1 += s.l1;
    heap.push(s);
  }
  // Below the rounding floor further splitting cannot help.
  auto done = [&] { return err <= tol || err <= 1e-14 * l1; };
  while (!heap.empty() && !done() && heap.size() < kMaxSegments) {
    const Segment w = heap.top();
    const double m = 0.5 * (w.a + w.b);
    if (!(m > w.a && m < w.b)) break;
    heap.pop();
    const Segment left = gk(f, w.a, m), right = gk(f, m, w.b);
    err += left.error + right.error - w.error;
    l1 += left.l1 + right.l1 - w.l1;
    heap.push(left);
    heap.push(right);
  }
  Integral total;
  total.converged = done();
  double e = 0.0;
  while (!heap.empty()) {
    total.value += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  total.error = e;
  return total;
}
Integral integrate_endpoint_singular(const Integrand& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = ts.integrate(f, a, b, std::sqrt(std::numeric_limits<double>::epsilon()), &err, &l1, &levels);
  return {v, err, err <= std::max(tol, 1e-12 * std::abs(l1))};
}

Integral gauss_legendre(const Integrand& f, double a, double b, double tol, int depth) {
  if (!(b > a)) return {};
  double prev = gl<10>(f, a, b);
  for (int order : {20, 40, 80}) {
    const double cur = order == 20 ? gl<20>(f, a, b) : order == 40 ? gl<40>(f, a, b) : gl<80>(f, a, b);
    if (std::abs(cur - prev) <= tol) return {cur, std::abs(cur - prev), true};
    prev = cur;
  }
  if (depth >= 12) return {prev, std::abs(prev), false};
  const double m = 0.5 * (a + b);
  Integral r = gauss_legendre(f, a, m, 0.5 * tol, depth + 1);
  r += gauss_legendre(f, m, b, 0.5 * tol, depth + 1);
  return r;
}

}  // namespace boolmodel

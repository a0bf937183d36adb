#include "boolmodel/curves.hpp"

#include <algorithm>

namespace boolmodel {

namespace {

constexpr double kParamEps = 1e-13;

void push_arc_angle(const CurvePiece& p, double phi, std::vector<double>& out) {
  const double rel = wrap_angle(phi - p.start_angle);
  const double s = rel / p.sweep;
  // A full circle has no endpoints, so its seam at s = 0 is a genuine point.
  if (p.sweep >= 2.0 * kPi ? s < 1.0 : (s > kParamEps && s < 1.0 - kParamEps)) out.push_back(s);
}

}  // namespace

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

CurvePiece CurvePiece::arc(Vec2 c, double r, double start, double sweep) {
  CurvePiece p;
  p.is_arc = true;
  p.center = c;
  p.radius = r;
  p.start_angle = start;
  p.sweep = sweep;
  p.from = c + r * unit_from_angle(start);
  p.to = sweep >= 2.0 * kPi ? p.from : c + r * unit_from_angle(start + sweep);
  return p;
}

Vec2 CurvePiece::at(double s) const {
  if (!is_arc) return from + (to - from) * s;
  return center + radius * unit_from_angle(start_angle + s * sweep);
}

CurvePiece CurvePiece::sub(double s0, double s1) const {
  if (!is_arc) return segment(at(s0), at(s1));
  CurvePiece p = arc(center, radius, start_angle + s0 * sweep, (s1 - s0) * sweep);
  return p;
}

double CurvePiece::length() const { return is_arc ? radius * sweep : norm(to - from); }

double CurvePiece::green() const {
  if (!is_arc) return 0.5 * cross(from, to);
  const double a0 = start_angle, a1 = start_angle + sweep;
  return 0.5 * (radius * radius * sweep + radius * center.x * (std::sin(a1) - std::sin(a0)) -
                radius * center.y * (std::cos(a1) - std::cos(a0)));
}

Vec2 CurvePiece::tangent(double s) const {
  if (!is_arc) {
    const Vec2 d = to - from;
    return d / norm(d);
  }
  const double a = start_angle + s * sweep;
  return {-std::sin(a), std::cos(a)};
}

void crossings_with_line(const CurvePiece& p, Vec2 q, Vec2 n, std::vector<double>& out) {
  if (!p.is_arc) {
    const double f0 = dot(p.from - q, n), f1 = dot(p.to - q, n);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      const double s = f0 / (f0 - f1);
      if (s > kParamEps && s < 1.0 - kParamEps) out.push_back(s);
    }
    return;
  }
  // r cos(phi - alpha) = <q - c, n>
  const double k = dot(q - p.center, n) / p.radius;
  if (!(std::abs(k) < 1.0)) return;
  const double alpha = std::atan2(n.y, n.x);
  const double delta = std::acos(k);
  push_arc_angle(p, alpha + delta, out);
  push_arc_angle(p, alpha - delta, out);
}

void crossings_with_circle(const CurvePiece& p, Vec2 c, double r, std::vector<double>& out) {
  if (!p.is_arc) {
    const Vec2 d = p.to - p.from;
    const Vec2 f = p.from - c;
    const double a = dot(d, d);
    const double b = 2.0 * dot(f, d);
    const double cc = dot(f, f) - r * r;
    const double disc = b * b - 4.0 * a * cc;
    if (!(disc > 0.0)) return;
    const double sq = std::sqrt(disc);
    // Numerically stable roots.
    const double qv = -0.5 * (b + std::copysign(sq, b));
    double s0 = qv / a, s1 = cc / qv;
    if (qv == 0.0) s0 = s1 = -b / (2.0 * a);
    for (double s : {s0, s1})
      if (s > kParamEps && s < 1.0 - kParamEps) out.push_back(s);
    return;
  }
  const Vec2 d = c - p.center;
  const double dist = norm(d);
  if (dist == 0.0) return;
  const double R = p.radius;
  if (!(dist < R + r) || !(dist > std::abs(R - r))) return;
  const double cosv = (dist * dist + R * R - r * r) / (2.0 * dist * R);
  if (!(std::abs(cosv) < 1.0)) return;
  const double alpha = std::atan2(d.y, d.x);
  const double delta = std::acos(cosv);
  push_arc_angle(p, alpha + delta, out);
  push_arc_angle(p, alpha - delta, out);
}

void piece_intersections(const CurvePiece& a, const CurvePiece& b, std::vector<Vec2>& out) {
  std::vector<double> params;
  if (b.is_arc) {
    crossings_with_circle(a, b.center, b.radius, params);
    for (double s : params) {
      const Vec2 x = a.at(s);
      const double phi = std::atan2(x.y - b.center.y, x.x - b.center.x);
      const double rel = wrap_angle(phi - b.start_angle);
      if (b.sweep >= 2.0 * kPi || (rel > 0.0 && rel < b.sweep)) out.push_back(x);
    }
    return;
  }
  const Vec2 d = b.to - b.from;
  const double len = norm(d);
  if (len == 0.0) return;
  const Vec2 n{d.y / len, -d.x / len};
  crossings_with_line(a, b.from, n, params);
  for (double s : params) {
    const Vec2 x = a.at(s);
    const double t = dot(x - b.from, d) / (len * len);
    if (t > 0.0 && t < 1.0) out.push_back(x);
  }
}

}  // namespace boolmodel

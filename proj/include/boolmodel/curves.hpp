#pragma once

#include <vector>

#include "boolmodel/geometry.hpp"

namespace boolmodel {

/// A boundary piece: a straight segment or a counterclockwise circular arc.
/// Both are parametrized by s in [0, 1].
struct CurvePiece {
  Vec2 from;
  Vec2 to;
  bool is_arc = false;
  Vec2 center{};
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 0.0;  // (0, 2 pi]; 2 pi is a full circle with from == to

  static CurvePiece segment(Vec2 a, Vec2 b) { return {a, b}; }
  static CurvePiece arc(Vec2 center, double radius, double start_angle, double sweep);
  static CurvePiece circle(Vec2 center, double radius) { return arc(center, radius, 0.0, 2.0 * kPi); }

  Vec2 at(double s) const;
  /// Sub-piece for parameters s0 < s1.
  CurvePiece sub(double s0, double s1) const;
  double length() const;
  /// Contribution (1/2) * integral of (x dy - y dx) along the piece.
  double green() const;
  /// Unit tangent at parameter s (direction of travel).
  Vec2 tangent(double s) const;
};

/// Parameters in (0, 1) where the piece crosses the line through q with normal n.
void crossings_with_line(const CurvePiece& p, Vec2 q, Vec2 n, std::vector<double>& out);
/// Parameters in (0, 1) where the piece crosses the circle (c, r).
void crossings_with_circle(const CurvePiece& p, Vec2 c, double r, std::vector<double>& out);
/// Intersection points of two pieces (transversal crossings only).
void piece_intersections(const CurvePiece& a, const CurvePiece& b, std::vector<Vec2>& out);

/// Normalized angle in [0, 2 pi).
double wrap_angle(double a);

}  // namespace boolmodel

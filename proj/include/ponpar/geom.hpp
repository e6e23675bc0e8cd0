#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace ponpar {

inline constexpr double kEps = 1e-9;

/// Point of the real projective plane, stored as (x, y, w).
/// Finite points keep w = 1; ideal points keep w = 0 and a sign-fixed unit
/// direction, so equal points have equal representatives.
struct HPoint {
  Eigen::Vector3d v{0.0, 0.0, 1.0};

  HPoint() = default;
  HPoint(double x, double y) : v(x, y, 1.0) {}
  explicit HPoint(const Eigen::Vector2d& p) : v(p.x(), p.y(), 1.0) {}

  /// Normalizes an arbitrary homogeneous triple. Throws on the zero triple.
  static HPoint homogeneous(double x, double y, double w);
  static HPoint homogeneous(const Eigen::Vector3d& raw) {
    return homogeneous(raw.x(), raw.y(), raw.z());
  }
  static HPoint ideal(double dx, double dy) { return homogeneous(dx, dy, 0.0); }

  bool isIdeal() const { return v.z() == 0.0; }
  double x() const { return v.x(); }
  double y() const { return v.y(); }
  Eigen::Vector2d xy() const { return v.head<2>(); }
};

/// Line (l, m, n) with incidence l x + m y + n w = 0, stored with
/// l^2 + m^2 = 1 and a fixed sign; the line at infinity is (0, 0, 1).
struct HLine {
  Eigen::Vector3d v{0.0, 0.0, 1.0};

  HLine() = default;
  HLine(double l, double m, double n);
  explicit HLine(const Eigen::Vector3d& raw) : HLine(raw.x(), raw.y(), raw.z()) {}

  bool isInfinity() const { return v.x() == 0.0 && v.y() == 0.0; }

  /// Incidence residual; for a finite point and a finite line this is the
  /// signed Euclidean distance.
  double eval(const HPoint& p) const { return v.dot(p.v); }

  Eigen::Vector2d normal() const { return v.head<2>(); }
  Eigen::Vector2d direction() const { return {-v.y(), v.x()}; }
};

/// Line through two distinct points. Throws "degenerate join/meet" when the
/// points coincide.
HLine join(const HPoint& a, const HPoint& b);

/// Intersection of two distinct lines; parallel lines meet in an ideal point.
HPoint meet(const HLine& a, const HLine& b);

HPoint reflect(const HPoint& p, const HPoint& about);
HPoint reflect(const HPoint& p, const HLine& mirror);
HPoint footOfPerpendicular(const HPoint& p, const HLine& line);
HPoint midpoint(const HPoint& a, const HPoint& b);

double distance(const HPoint& a, const HPoint& b);
bool approxEq(const HPoint& a, const HPoint& b, double tol = kEps);
bool approxEq(const HLine& a, const HLine& b, double tol = kEps);

}  // namespace ponpar

#pragma once

#include <vector>

#include "ponpar/geom.hpp"

namespace ponpar {

enum class ConicKind { Ellipse, Parabola, Hyperbola, Degenerate };
const char* conicKindName(ConicKind k);

/// Point conic x^T M x = 0 as a symmetric 3x3 matrix with unit Frobenius
/// norm; the sign is fixed so the first nonzero upper-triangle entry (row
/// major) is positive, making equal conics bitwise-comparable.
struct Conic {
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
  ConicKind kind = ConicKind::Degenerate;

  double eval(const HPoint& p) const { return p.v.dot(M * p.v); }
};

/// Kind of an already-normalized symmetric matrix: degenerate when det(M) is
/// numerically zero, otherwise decided by the determinant of the upper-left
/// 2x2 block at tolerance 1e-9.
ConicKind classifyConic(const Eigen::Matrix3d& m);

Conic conicFromMatrix(const Eigen::Matrix3d& m);
Conic conicFromCenterAxes(const HPoint& center, double semiA, double semiB, double angle);

struct ParabolaElements {
  HPoint focus;
  HPoint vertex;
  HLine directrix;
  HLine axis;
  double focalDistance = 0.0;  // |focus - vertex|
  Eigen::Vector2d axisDir;     // unit, from vertex toward focus
};
ParabolaElements parabolaElements(const Conic& c);

/// Point of a parabola in its canonical parametrization
/// vertex + s*perp + s^2/(4 f)*axisDir.
HPoint parabolaPoint(const ParabolaElements& e, double s);

/// Center, semi-axes, axis directions and foci of an ellipse or hyperbola.
/// For a hyperbola semiMajor/majorDir describe the transverse axis.
struct CentralConicElements {
  HPoint center;
  double semiMajor = 0.0;
  double semiMinor = 0.0;
  Eigen::Vector2d majorDir{1.0, 0.0};
  Eigen::Vector2d minorDir{0.0, 1.0};
  HPoint focus1, focus2;
};
CentralConicElements centralConicElements(const Conic& c);

/// Ellipse point center + a cos(t) majorDir + b sin(t) minorDir.
HPoint pointOnCentralConic(const CentralConicElements& e, double t);

HLine polar(const Conic& c, const HPoint& p);
HPoint pole(const Conic& c, const HLine& l);

struct LineConicIntersection {
  int count = 0;             // distinct real intersections; tangency gives 1
  HPoint first, second;      // second == first at tangency
  double discriminant = 0.0; // of the restriction quadratic; ~0 at tangency
};
LineConicIntersection intersectConicLine(const Conic& c, const HLine& l);

/// |discriminant| of the line's restriction to the conic (both unit-normalized).
double tangencyResidual(const Conic& c, const HLine& l);

/// Contact point of a line assumed tangent to the conic (extremum of the
/// restriction quadratic).
HPoint tangencyPointOnLine(const Conic& c, const HLine& l);

/// 0, 1 (P on the conic) or 2 tangent lines through P.
std::vector<HLine> tangentsFromPoint(const Conic& c, const HPoint& p);

Conic parabolaFromFocusDirectrix(const HPoint& focus, const HLine& directrix);

/// First-order (Sampson) geometric distance from a point to the conic.
double sampsonDistance(const Conic& c, const HPoint& p);

}  // namespace ponpar

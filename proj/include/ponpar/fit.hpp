#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ponpar/conics.hpp"

namespace ponpar {

enum class ModelKind { Point, Line, Circle, Ellipse, Parabola, Hyperbola, None };
const char* modelName(ModelKind m);

struct FitReport {
  ModelKind model = ModelKind::None;
  HPoint point;                  // Point model; also the circle center
  HLine line;                    // Line model
  double radius = 0.0;           // Circle model
  std::optional<Conic> conic;    // any conic-backed model, including Circle
  double rms = 0.0;
  double maxResidual = 0.0;
  int nSamples = 0;
};

/// Centroid model; maxResidual is the largest distance from the centroid.
FitReport fitPoint(std::span<const HPoint> pts);

/// Total-least-squares line (perpendicular distances).
FitReport fitLine(std::span<const HPoint> pts);

/// Algebraic circle fit with geometric residuals; collinear input yields None.
FitReport fitCircle(std::span<const HPoint> pts);

/// Algebraic conic fit (smallest singular vector on normalized coordinates)
/// with Sampson residuals; rank-deficient input yields None.
FitReport fitConic(std::span<const HPoint> pts);

/// Conic fit constrained to a parabola: axis-angle search with a linear
/// solve per angle; Sampson residuals.
FitReport fitParabola(std::span<const HPoint> pts);

/// Least-squares intersection point of a pencil of lines; None when the
/// normal matrix is ill-conditioned (near-parallel pencil).
FitReport commonPoint(std::span<const HLine> lines);

/// Characteristic points of a line family ordered by parameter: midpoints of
/// consecutive pairwise intersections, accurate to fourth order in the grid
/// step. Near-parallel consecutive pairs are dropped and counted.
std::vector<HPoint> envelopePoints(std::span<const HLine> lines, int& dropped);

struct Predicate {
  bool pass = false;
  double residual = 0.0;
};

Predicate parallelLines(const HLine& a, const HLine& b, double tol = 1e-7);
/// Residual is the triangle area spanned by the three points.
Predicate collinearPoints(const HPoint& a, const HPoint& b, const HPoint& c, double tol = 1e-9);
/// Residual is the diameter of the point set.
Predicate stationaryPoint(std::span<const HPoint> pts, double tol = 1e-7);
Predicate pointOnConic(const Conic& c, const HPoint& p, double tol = kEps);
Predicate concentricConics(const CentralConicElements& a, const CentralConicElements& b,
                           double tol = 1e-6);
/// Angle between principal frames folded to [0, pi/4].
Predicate axisAlignedConics(const CentralConicElements& a, const CentralConicElements& b,
                            double tol = 1e-6);
/// Both incidences plus the angle between the polar lines at p.
Predicate conicsTangentAt(const Conic& a, const Conic& b, const HPoint& p, double tol = 1e-6);

struct ModelSelection {
  FitReport chosen;
  double pointDiameter = 0.0;
  double lineRms = 0.0;
  double circleRms = 0.0;
  double conicRms = 0.0;
};

/// Ladder point -> line -> circle -> conic; first model under tol wins.
ModelSelection selectModel(std::span<const HPoint> pts, double tol = 1e-7);

}  // namespace ponpar

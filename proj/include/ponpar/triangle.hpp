#pragma once

#include <array>

#include "ponpar/conics.hpp"

namespace ponpar {

enum class CenterId { X1, X2, X3, X4, X5, X39, X99, X110, X140, X1385, Omega1, Omega2 };
enum class ConjugationKind { Isogonal, Isotomic };
enum class TriangleConic {
  Circumcircle,
  SteinerCircumellipse,
  SteinerInellipse,
  MacBeathInellipse,
  BrocardInellipse,
  KiepertParabola,
};

struct Triangle {
  HPoint A, B, C;
  double a = 0.0, b = 0.0, c = 0.0;  // |BC|, |CA|, |AB|
  double signedArea2 = 0.0;          // twice the signed area
  Eigen::Matrix3d cartFromBary;      // columns: homogeneous A, B, C
  Eigen::Matrix3d baryFromCart;

  Triangle(const HPoint& va, const HPoint& vb, const HPoint& vc);

  std::array<HPoint, 3> vertices() const { return {A, B, C}; }
  /// Sidelines opposite each vertex: {BC, CA, AB}.
  std::array<HLine, 3> sidelines() const;
};

Eigen::Vector3d trilinearToBarycentric(const Triangle& t, const Eigen::Vector3d& tri);
Eigen::Vector3d barycentricToTrilinear(const Triangle& t, const Eigen::Vector3d& bary);

/// Homogeneous barycentrics to a plane point; zero-sum triples map to ideal
/// points.
HPoint barycentricToPoint(const Triangle& t, const Eigen::Vector3d& bary);
Eigen::Vector3d pointToBarycentric(const Triangle& t, const HPoint& p);
HPoint trilinearToPoint(const Triangle& t, const Eigen::Vector3d& tri);
Eigen::Vector3d pointToTrilinear(const Triangle& t, const HPoint& p);

/// Isogonal/isotomic conjugate. Throws "conjugate undefined" on sidelines.
HPoint conjugate(const Triangle& t, const HPoint& p, ConjugationKind kind);

HPoint triangleCenter(const Triangle& t, CenterId id);

struct PedalLines {
  HLine simson;
  HLine steiner;  // simson scaled by 2 from the pole
  std::array<HPoint, 3> feet;
  double collinearityResidual = 0.0;
  bool degenerate = false;  // pole at (or numerically at) a vertex
};

/// Simson and Steiner lines of a circumcircle point.
PedalLines simsonSteiner(const Triangle& t, const HPoint& onCircumcircle);

Conic namedConic(const Triangle& t, TriangleConic which);

/// Cartesian conic from its matrix in barycentric/trilinear coordinates.
Conic conicFromBarycentricMatrix(const Triangle& t, const Eigen::Matrix3d& n);
Conic conicFromTrilinearMatrix(const Triangle& t, const Eigen::Matrix3d& n);

}  // namespace ponpar

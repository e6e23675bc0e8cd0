#pragma once

#include <complex>
#include <optional>

#include "ponpar/triangle.hpp"

namespace ponpar {

enum class FamilyKind { Inellipse, Bicentric, MacBeath, Brocard, Homothetic, CircumInconic };
const char* familyKindName(FamilyKind k);

/// Parameters of a Poncelet 3-periodic family (outer conic, caustic).
struct FamilySpec {
  FamilyKind kind = FamilyKind::Bicentric;
  double R = 1.0;                          // outer radius (Inellipse, Bicentric)
  double alpha = 0.6;                      // caustic semiaxis (Inellipse; other is R - alpha)
  double r = 0.35;                         // incircle radius (Bicentric)
  std::optional<Triangle> seed;            // seed triangle for the other kinds
  Eigen::Vector3d perspectorBary{1, 1, 1}; // caustic Brianchon point (CircumInconic)

  static FamilySpec inellipse(double R, double alpha);
  static FamilySpec bicentric(double R, double r);
  static FamilySpec macbeath(const Triangle& seed);
  static FamilySpec brocard(const Triangle& seed);
  static FamilySpec homothetic(const Triangle& seed);
  static FamilySpec circumInconic(const Triangle& seed, const Eigen::Vector3d& perspectorBary);
};

struct Family {
  FamilyKind kind = FamilyKind::Bicentric;
  Conic outer, inner;
  CentralConicElements outerEl, innerEl;
  double closureError = 0.0;  // max closure defect over the verification grid
};

/// Builds the conic pair and verifies triangle closure on a 32-point grid;
/// throws "Poncelet condition violated" when closure fails.
Family buildFamily(const FamilySpec& spec);

HPoint outerPointAt(const Family& fam, double t);

/// Next triangle vertex from a point on the outer conic: tangent to the
/// caustic (counterclockwise-first touchpoint for orientation +1), second
/// intersection with the outer conic.
HPoint nextVertex(const Family& fam, const HPoint& onOuter, int orientation = 1);

struct TriangleSample {
  std::optional<Triangle> tri;  // empty for degenerate samples
  double closureResidual = 0.0;
  bool ok() const { return tri.has_value(); }
};

TriangleSample triangleAt(const Family& fam, double t);

/// Inparabola vertex for focus at the given outer-circle angle, from the
/// closed form (3 + k + (1 - conj(k)) abc) / 4 in the unit frame that maps
/// the outer circle to the unit circle and the focus to 1, where k is the
/// symmetric focal invariant of the caustic. Requires a circular outer conic.
HPoint vertexFormulaOracle(const Family& fam, double focusAngle, double t);

/// Same formula evaluated on an already-constructed family member.
HPoint vertexFormulaOracle(const Family& fam, double focusAngle, const Triangle& tri);

/// The invariant k = f1 + f2 - f1 f2 of the caustic foci in that frame.
std::complex<double> focalInvariant(const Family& fam, double focusAngle);

}  // namespace ponpar

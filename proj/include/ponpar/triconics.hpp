#pragma once

#include "ponpar/fit.hpp"
#include "ponpar/triangle.hpp"

namespace ponpar {

/// Circumparabola spec: the conjugation and the tangency parameter of the
/// pre-image line (angle on the circumcircle for isogonal, ellipse parameter
/// on the Steiner circumellipse for isotomic).
struct CPSpec {
  ConjugationKind kind = ConjugationKind::Isogonal;
  double tangencyParam = 0.0;
};

HPoint cpTangencyPoint(const Triangle& t, const CPSpec& spec);
HLine cpPreimageLine(const Triangle& t, const CPSpec& spec);

/// Conjugate image of an arbitrary line: a circumconic.
Conic circumconicFromLine(const Triangle& t, const HLine& l, ConjugationKind kind);

/// Circumscribed parabola: conjugate image of the spec's tangent line.
Conic circumparabola(const Triangle& t, const CPSpec& spec);

/// Inscribed parabola with the given circumcircle point as focus.
Conic inparabolaFromFocus(const Triangle& t, const HPoint& focus);

/// Inconic with the given Brianchon point (parabola iff the point lies on
/// the Steiner circumellipse).
Conic inconicFromPerspector(const Triangle& t, const HPoint& perspector);

enum class PolarMode { Circum, In };

/// Polar triangle of t with respect to a conic. Circum mode: vertices are
/// meets of the tangents at the triangle's vertices (requires them on the
/// conic); In mode: vertices are the poles of the sidelines, i.e. the
/// touchpoints of an inconic.
Triangle polarTriangle(const Triangle& t, const Conic& c, PolarMode mode);

struct Perspective {
  HPoint point;
  double residual = 0.0;
};

/// Concurrency point of the three vertex-to-vertex cevians; throws
/// "not perspective" above tolerance 1e-8.
Perspective perspector(const Triangle& t, const Triangle& u);

/// Pre-image line of a circumconic under the conjugation, recovered from
/// five conic points mapped through the conjugation.
HLine recoverPreimageLine(const Triangle& t, const Conic& circumconic, ConjugationKind kind);

}  // namespace ponpar

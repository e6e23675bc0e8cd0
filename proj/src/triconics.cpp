#include "ponpar/triconics.hpp"

#include <cmath>

namespace ponpar {

namespace {

void requireAwayFromVertices(const Triangle& t, const HPoint& p, const char* what) {
  for (const HPoint& v : t.vertices()) {
    if (distance(p, v) < 1e-9) throw std::runtime_error(std::string(what) + ": point at a vertex");
  }
}

}  // namespace

HPoint cpTangencyPoint(const Triangle& t, const CPSpec& spec) {
  if (spec.kind == ConjugationKind::Isogonal) {
    const HPoint o = triangleCenter(t, CenterId::X3);
    const double r = distance(o, t.A);
    return HPoint(o.xy() + r * Eigen::Vector2d(std::cos(spec.tangencyParam),
                                               std::sin(spec.tangencyParam)));
  }
  const CentralConicElements el =
      centralConicElements(namedConic(t, TriangleConic::SteinerCircumellipse));
  return pointOnCentralConic(el, spec.tangencyParam);
}

HLine cpPreimageLine(const Triangle& t, const CPSpec& spec) {
  const Conic carrier = namedConic(t, spec.kind == ConjugationKind::Isogonal
                                          ? TriangleConic::Circumcircle
                                          : TriangleConic::SteinerCircumellipse);
  return polar(carrier, cpTangencyPoint(t, spec));
}

Conic circumconicFromLine(const Triangle& t, const HLine& l, ConjugationKind kind) {
  if (kind == ConjugationKind::Isogonal) {
    // line pullback to trilinears; image of l alpha + m beta + n gamma = 0 is
    // the circumconic l beta gamma + m gamma alpha + n alpha beta = 0
    const Eigen::Matrix3d cartFromTri =
        t.cartFromBary * Eigen::Vector3d(t.a, t.b, t.c).asDiagonal();
    const Eigen::Vector3d lm = cartFromTri.transpose() * l.v;
    Eigen::Matrix3d n;
    n << 0.0, lm(2), lm(1),
         lm(2), 0.0, lm(0),
         lm(1), lm(0), 0.0;
    return conicFromTrilinearMatrix(t, n);
  }
  const Eigen::Vector3d pq = t.cartFromBary.transpose() * l.v;
  Eigen::Matrix3d n;
  n << 0.0, pq(2), pq(1),
       pq(2), 0.0, pq(0),
       pq(1), pq(0), 0.0;
  return conicFromBarycentricMatrix(t, n);
}

Conic circumparabola(const Triangle& t, const CPSpec& spec) {
  const HPoint q = cpTangencyPoint(t, spec);
  requireAwayFromVertices(t, q, "circumparabola");
  const Conic cp = circumconicFromLine(t, cpPreimageLine(t, spec), spec.kind);
  if (cp.kind != ConicKind::Parabola)
    throw std::runtime_error("circumparabola: degenerate image");
  return cp;
}

Conic inparabolaFromFocus(const Triangle& t, const HPoint& focus) {
  requireAwayFromVertices(t, focus, "inparabolaFromFocus");
  const PedalLines ped = simsonSteiner(t, focus);  // validates circumcircle incidence
  if (ped.degenerate) throw std::runtime_error("inparabolaFromFocus: focus at a vertex");
  return parabolaFromFocusDirectrix(focus, ped.steiner);
}

Conic inconicFromPerspector(const Triangle& t, const HPoint& perspector) {
  const Eigen::Vector3d u = pointToBarycentric(t, perspector);
  const double mx = u.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u(i)) < 1e-12 * mx)
      throw std::runtime_error("inconicFromPerspector: perspector on a sideline");
  }
  const double p = u(0), q = u(1), r = u(2);
  Eigen::Matrix3d n;
  n << q * q * r * r, -p * q * r * r, -p * q * q * r,
       -p * q * r * r, p * p * r * r, -p * p * q * r,
       -p * q * q * r, -p * p * q * r, p * p * q * q;
  return conicFromBarycentricMatrix(t, n);
}

Triangle polarTriangle(const Triangle& t, const Conic& c, PolarMode mode) {
  if (mode == PolarMode::Circum) {
    for (const HPoint& v : t.vertices()) {
      if (sampsonDistance(c, v) > 1e-7)
        throw std::runtime_error("polarTriangle: vertex not on conic");
    }
    const HLine ta = polar(c, t.A), tb = polar(c, t.B), tc = polar(c, t.C);
    return Triangle(meet(tb, tc), meet(tc, ta), meet(ta, tb));
  }
  const auto sides = t.sidelines();
  for (const auto& s : sides) {
    if (tangencyResidual(c, s) > 1e-7)
      throw std::runtime_error("polarTriangle: sideline not tangent to conic");
  }
  return Triangle(pole(c, sides[0]), pole(c, sides[1]), pole(c, sides[2]));
}

Perspective perspector(const Triangle& t, const Triangle& u) {
  const std::array<HLine, 3> cevians = {join(t.A, u.A), join(t.B, u.B), join(t.C, u.C)};
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (const auto& l : cevians) {
    const Eigen::Vector2d n = l.normal();
    a += n * n.transpose();
    rhs -= l.v.z() * n;
  }
  const Eigen::Vector2d p = a.fullPivLu().solve(rhs);
  Perspective out;
  out.point = HPoint(p);
  for (const auto& l : cevians)
    out.residual = std::max(out.residual, std::abs(l.eval(out.point)));
  if (out.residual > 1e-8) throw std::runtime_error("not perspective");
  return out;
}

HLine recoverPreimageLine(const Triangle& t, const Conic& circumconic, ConjugationKind kind) {
  if (circumconic.kind != ConicKind::Parabola)
    throw std::runtime_error("recoverPreimageLine: expected a parabola");
  const ParabolaElements el = parabolaElements(circumconic);
  const double sigma = 2.0 * std::sqrt(std::max(el.focalDistance, 1e-6));
  std::vector<HPoint> images;
  for (double s : {-0.8, -0.4, 0.15, 0.4, 0.8}) {
    try {
      const HPoint img = conjugate(t, parabolaPoint(el, s * sigma), kind);
      if (!img.isIdeal()) images.push_back(img);
    } catch (const std::exception&) {
      // sample on a sideline; skip
    }
  }
  if (images.size() < 3)
    throw std::runtime_error("recoverPreimageLine: too few usable samples");
  return fitLine(images).line;
}

}  // namespace ponpar

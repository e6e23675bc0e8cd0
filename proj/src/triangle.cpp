#include "ponpar/triangle.hpp"

#include <cmath>

namespace ponpar {

namespace {

Eigen::Vector2d solveTwoByTwo(const Eigen::Matrix2d& m, const Eigen::Vector2d& rhs) {
  return m.fullPivLu().solve(rhs);
}

HPoint circumcenterOf(const HPoint& a, const HPoint& b, const HPoint& c) {
  Eigen::Matrix2d m;
  m.row(0) = 2.0 * (b.xy() - a.xy()).transpose();
  m.row(1) = 2.0 * (c.xy() - a.xy()).transpose();
  const Eigen::Vector2d rhs(b.xy().squaredNorm() - a.xy().squaredNorm(),
                            c.xy().squaredNorm() - a.xy().squaredNorm());
  return HPoint(solveTwoByTwo(m, rhs));
}

// Ellipse with the given foci tangent to every sideline; the semi-major axis
// follows from |reflect(f1, side) - f2| = 2a.
Conic inconicFromFoci(const Triangle& t, const HPoint& f1, const HPoint& f2) {
  const auto sides = t.sidelines();
  const double twoA = distance(reflect(f1, sides[2]), f2);
  const HPoint center = midpoint(f1, f2);
  const double cHalf = 0.5 * distance(f1, f2);
  const double a = 0.5 * twoA;
  if (!(a > cHalf + 1e-14))
    throw std::runtime_error("inconicFromFoci: degenerate focal configuration");
  const double b = std::sqrt(a * a - cHalf * cHalf);
  const double angle = cHalf < 1e-12
                           ? 0.0
                           : std::atan2(f2.y() - f1.y(), f2.x() - f1.x());
  const Conic conic = conicFromCenterAxes(center, a, b, angle);
  for (int i = 0; i < 2; ++i) {
    if (tangencyResidual(conic, sides[i]) > 1e-7)
      throw std::runtime_error("inconicFromFoci: foci do not define an inconic");
  }
  return conic;
}

}  // namespace

Triangle::Triangle(const HPoint& va, const HPoint& vb, const HPoint& vc)
    : A(va), B(vb), C(vc) {
  if (A.isIdeal() || B.isIdeal() || C.isIdeal())
    throw std::runtime_error("Triangle: ideal vertex");
  a = distance(B, C);
  b = distance(C, A);
  c = distance(A, B);
  const Eigen::Vector2d ab = B.xy() - A.xy(), ac = C.xy() - A.xy();
  signedArea2 = ab.x() * ac.y() - ab.y() * ac.x();
  if (std::abs(signedArea2) <= 1e-9)
    throw std::runtime_error("Triangle: degenerate (collinear vertices)");
  cartFromBary.col(0) = A.v;
  cartFromBary.col(1) = B.v;
  cartFromBary.col(2) = C.v;
  baryFromCart = cartFromBary.inverse();
}

std::array<HLine, 3> Triangle::sidelines() const {
  return {join(B, C), join(C, A), join(A, B)};
}

Eigen::Vector3d trilinearToBarycentric(const Triangle& t, const Eigen::Vector3d& tri) {
  return {t.a * tri(0), t.b * tri(1), t.c * tri(2)};
}

Eigen::Vector3d barycentricToTrilinear(const Triangle& t, const Eigen::Vector3d& bary) {
  return {bary(0) / t.a, bary(1) / t.b, bary(2) / t.c};
}

HPoint barycentricToPoint(const Triangle& t, const Eigen::Vector3d& bary) {
  return HPoint::homogeneous(t.cartFromBary * bary);
}

Eigen::Vector3d pointToBarycentric(const Triangle& t, const HPoint& p) {
  return t.baryFromCart * p.v;
}

HPoint trilinearToPoint(const Triangle& t, const Eigen::Vector3d& tri) {
  return barycentricToPoint(t, trilinearToBarycentric(t, tri));
}

Eigen::Vector3d pointToTrilinear(const Triangle& t, const HPoint& p) {
  return barycentricToTrilinear(t, pointToBarycentric(t, p));
}

HPoint conjugate(const Triangle& t, const HPoint& p, ConjugationKind kind) {
  const Eigen::Vector3d u = pointToBarycentric(t, p);
  const double mx = u.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u(i)) < 1e-13 * mx) throw std::runtime_error("conjugate undefined");
  }
  Eigen::Vector3d w;
  if (kind == ConjugationKind::Isotomic) {
    w = Eigen::Vector3d(1.0 / u(0), 1.0 / u(1), 1.0 / u(2));
  } else {
    w = Eigen::Vector3d(t.a * t.a / u(0), t.b * t.b / u(1), t.c * t.c / u(2));
  }
  return barycentricToPoint(t, w);
}

HPoint triangleCenter(const Triangle& t, CenterId id) {
  const double a2 = t.a * t.a, b2 = t.b * t.b, c2 = t.c * t.c;
  switch (id) {
    case CenterId::X1:
      return barycentricToPoint(t, {t.a, t.b, t.c});
    case CenterId::X2:
      return barycentricToPoint(t, {1.0, 1.0, 1.0});
    case CenterId::X3:
      return circumcenterOf(t.A, t.B, t.C);
    case CenterId::X4: {
      const HPoint o = circumcenterOf(t.A, t.B, t.C);
      return HPoint(t.A.xy() + t.B.xy() + t.C.xy() - 2.0 * o.xy());
    }
    case CenterId::X5:
      return midpoint(triangleCenter(t, CenterId::X3), triangleCenter(t, CenterId::X4));
    case CenterId::X39:
      return barycentricToPoint(t, {a2 * (b2 + c2), b2 * (c2 + a2), c2 * (a2 + b2)});
    case CenterId::X99:
    case CenterId::X110: {
      const double d0 = b2 - c2, d1 = c2 - a2, d2 = a2 - b2;
      const double scale = a2 + b2 + c2;
      if (std::min({std::abs(d0), std::abs(d1), std::abs(d2)}) < 1e-10 * scale)
        throw std::runtime_error("undefined center for symmetric triangle");
      if (id == CenterId::X99)
        return barycentricToPoint(t, {1.0 / d0, 1.0 / d1, 1.0 / d2});
      return barycentricToPoint(t, {a2 / d0, b2 / d1, c2 / d2});
    }
    case CenterId::X140:
      return midpoint(triangleCenter(t, CenterId::X3), triangleCenter(t, CenterId::X5));
    case CenterId::X1385:
      return midpoint(triangleCenter(t, CenterId::X1), triangleCenter(t, CenterId::X3));
    case CenterId::Omega1:
      return trilinearToPoint(t, {t.c / t.b, t.a / t.c, t.b / t.a});
    case CenterId::Omega2:
      return trilinearToPoint(t, {t.b / t.c, t.c / t.a, t.a / t.b});
  }
  throw std::runtime_error("triangleCenter: unknown center");
}

PedalLines simsonSteiner(const Triangle& t, const HPoint& p) {
  const HPoint o = triangleCenter(t, CenterId::X3);
  const double r = distance(o, t.A);
  if (std::abs(distance(o, p) - r) > 1e-7)
    throw std::runtime_error("simsonSteiner: point not on circumcircle");

  PedalLines out;
  const auto sides = t.sidelines();
  for (int i = 0; i < 3; ++i) out.feet[i] = footOfPerpendicular(p, sides[i]);
  for (const HPoint& v : t.vertices()) {
    if (distance(p, v) < 1e-8) out.degenerate = true;
  }

  // total-least-squares line through the three pedal feet
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  for (const auto& f : out.feet) mu += f.xy();
  mu /= 3.0;
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const auto& f : out.feet) {
    const Eigen::Vector2d d = f.xy() - mu;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(scatter);
  const Eigen::Vector2d n = es.eigenvectors().col(0);
  out.simson = HLine(n.x(), n.y(), -n.dot(mu));
  for (const auto& f : out.feet)
    out.collinearityResidual = std::max(out.collinearityResidual, std::abs(out.simson.eval(f)));

  // homothety with pole p and ratio 2 maps (l, m, n) to (l, m, 2n + l px + m py)
  const Eigen::Vector3d s = out.simson.v;
  out.steiner = HLine(s.x(), s.y(), 2.0 * s.z() + s.x() * p.x() + s.y() * p.y());
  return out;
}

Conic conicFromBarycentricMatrix(const Triangle& t, const Eigen::Matrix3d& n) {
  return conicFromMatrix(t.baryFromCart.transpose() * n * t.baryFromCart);
}

Conic conicFromTrilinearMatrix(const Triangle& t, const Eigen::Matrix3d& n) {
  const Eigen::Matrix3d triFromCart =
      Eigen::Vector3d(1.0 / t.a, 1.0 / t.b, 1.0 / t.c).asDiagonal() * t.baryFromCart;
  return conicFromMatrix(triFromCart.transpose() * n * triFromCart);
}

Conic namedConic(const Triangle& t, TriangleConic which) {
  switch (which) {
    case TriangleConic::Circumcircle: {
      const HPoint o = triangleCenter(t, CenterId::X3);
      const double r = distance(o, t.A);
      return conicFromCenterAxes(o, r, r, 0.0);
    }
    case TriangleConic::SteinerCircumellipse: {
      Eigen::Matrix3d n;
      n << 0, 1, 1, 1, 0, 1, 1, 1, 0;
      return conicFromBarycentricMatrix(t, 0.5 * n);
    }
    case TriangleConic::SteinerInellipse: {
      Eigen::Matrix3d n;
      n << 1, -1, -1, -1, 1, -1, -1, -1, 1;
      return conicFromBarycentricMatrix(t, n);
    }
    case TriangleConic::MacBeathInellipse:
      return inconicFromFoci(t, triangleCenter(t, CenterId::X3), triangleCenter(t, CenterId::X4));
    case TriangleConic::BrocardInellipse:
      return inconicFromFoci(t, triangleCenter(t, CenterId::Omega1),
                             triangleCenter(t, CenterId::Omega2));
    case TriangleConic::KiepertParabola: {
      const HPoint focus = triangleCenter(t, CenterId::X110);
      return parabolaFromFocusDirectrix(focus, simsonSteiner(t, focus).steiner);
    }
  }
  throw std::runtime_error("namedConic: unknown conic");
}

}  // namespace ponpar

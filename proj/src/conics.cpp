#include "ponpar/conics.hpp"

#include <cmath>
#include <limits>

namespace ponpar {

namespace {
constexpr double kParabolaTol = 1e-9;    // |det of 2x2 block| below this: parabola
constexpr double kDegenerateTol = 1e-12; // |det M| below this: degenerate

Eigen::Matrix3d normalizeMatrix(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d s = 0.5 * (m + m.transpose());
  const double norm = s.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::runtime_error("Conic: zero or non-finite matrix");
  s /= norm;
  const double entries[6] = {s(0, 0), s(0, 1), s(0, 2), s(1, 1), s(1, 2), s(2, 2)};
  for (double e : entries) {
    if (std::abs(e) > 1e-12) {
      if (e < 0.0) s = -s;
      break;
    }
  }
  return s;
}
}  // namespace

const char* conicKindName(ConicKind k) {
  switch (k) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

ConicKind classifyConic(const Eigen::Matrix3d& m) {
  if (std::abs(m.determinant()) < kDegenerateTol) return ConicKind::Degenerate;
  const double delta = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (delta > kParabolaTol) return ConicKind::Ellipse;
  if (delta < -kParabolaTol) return ConicKind::Hyperbola;
  return ConicKind::Parabola;
}

Conic conicFromMatrix(const Eigen::Matrix3d& m) {
  Conic c;
  c.M = normalizeMatrix(m);
  c.kind = classifyConic(c.M);
  return c;
}

Conic conicFromCenterAxes(const HPoint& center, double semiA, double semiB, double angle) {
  if (center.isIdeal()) throw std::runtime_error("conicFromCenterAxes: ideal center");
  if (!(semiA > 0.0) || !(semiB > 0.0))
    throw std::runtime_error("conicFromCenterAxes: non-positive semiaxis");
  const double co = std::cos(angle), si = std::sin(angle);
  Eigen::Matrix2d rot;
  rot << co, -si, si, co;
  // world -> canonical frame
  Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
  t.topLeftCorner<2, 2>() = rot.transpose();
  t.topRightCorner<2, 1>() = -rot.transpose() * center.xy();
  Eigen::Matrix3d canon = Eigen::Vector3d(1.0 / (semiA * semiA), 1.0 / (semiB * semiB), -1.0).asDiagonal();
  return conicFromMatrix(t.transpose() * canon * t);
}

ParabolaElements parabolaElements(const Conic& c) {
  if (c.kind != ConicKind::Parabola)
    throw std::runtime_error("parabolaElements: not a parabola");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c.M.topLeftCorner<2, 2>());
  const Eigen::Vector2d evals = es.eigenvalues();
  const int axisIdx = std::abs(evals(0)) < std::abs(evals(1)) ? 0 : 1;
  Eigen::Vector2d axis = es.eigenvectors().col(axisIdx);
  const Eigen::Vector2d perp = es.eigenvectors().col(1 - axisIdx);
  const double lambda = evals(1 - axisIdx);
  const Eigen::Vector2d d2(c.M(0, 2), c.M(1, 2));
  const double dP = perp.dot(d2);
  const double eP = axis.dot(d2);
  const double f = c.M(2, 2);
  if (std::abs(eP) < 1e-14 || std::abs(lambda) < 1e-14)
    throw std::runtime_error("parabolaElements: degenerate parabola");
  const double xv = -dP / lambda;
  const double yv = -(f - dP * dP / lambda) / (2.0 * eP);
  const double fdist = -eP / (2.0 * lambda);

  ParabolaElements out;
  out.vertex = HPoint(xv * perp + yv * axis);
  out.focus = HPoint(out.vertex.xy() + fdist * axis);
  const Eigen::Vector2d dpt = out.vertex.xy() - fdist * axis;
  out.directrix = HLine(axis.x(), axis.y(), -axis.dot(dpt));
  out.axis = HLine(perp.x(), perp.y(), -perp.dot(out.vertex.xy()));
  out.focalDistance = std::abs(fdist);
  out.axisDir = fdist >= 0.0 ? axis : Eigen::Vector2d(-axis);
  return out;
}

HPoint parabolaPoint(const ParabolaElements& e, double s) {
  const Eigen::Vector2d perp(-e.axisDir.y(), e.axisDir.x());
  return HPoint(e.vertex.xy() + s * perp + s * s / (4.0 * e.focalDistance) * e.axisDir);
}

CentralConicElements centralConicElements(const Conic& c) {
  if (c.kind != ConicKind::Ellipse && c.kind != ConicKind::Hyperbola)
    throw std::runtime_error("centralConicElements: conic has no center");
  const Eigen::Matrix2d block = c.M.topLeftCorner<2, 2>();
  const Eigen::Vector2d center = block.ldlt().solve(-Eigen::Vector2d(c.M(0, 2), c.M(1, 2)));
  const double f0 = c.eval(HPoint(center));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);

  struct AxisInfo {
    double len2;
    Eigen::Vector2d dir;
  };
  AxisInfo info[2];
  int realAxes = 0;
  for (int i = 0; i < 2; ++i) {
    const double q = -f0 / es.eigenvalues()(i);
    info[i] = {q, es.eigenvectors().col(i)};
    if (q > 0.0) ++realAxes;
  }

  CentralConicElements out;
  out.center = HPoint(center);
  if (c.kind == ConicKind::Ellipse) {
    if (realAxes != 2) throw std::runtime_error("centralConicElements: imaginary ellipse");
    const int majorIdx = info[0].len2 >= info[1].len2 ? 0 : 1;
    out.semiMajor = std::sqrt(info[majorIdx].len2);
    out.semiMinor = std::sqrt(info[1 - majorIdx].len2);
    out.majorDir = info[majorIdx].dir;
  } else {
    if (realAxes != 1) throw std::runtime_error("centralConicElements: empty hyperbola");
    const int transIdx = info[0].len2 > 0.0 ? 0 : 1;
    out.semiMajor = std::sqrt(info[transIdx].len2);
    out.semiMinor = std::sqrt(-info[1 - transIdx].len2);
    out.majorDir = info[transIdx].dir;
  }
  // near-circular: pin the frame for determinism
  if (c.kind == ConicKind::Ellipse &&
      std::abs(out.semiMajor - out.semiMinor) < 1e-12 * out.semiMajor) {
    out.majorDir = Eigen::Vector2d(1.0, 0.0);
  }
  if (out.majorDir.x() < 0.0 || (out.majorDir.x() == 0.0 && out.majorDir.y() < 0.0))
    out.majorDir = -out.majorDir;
  out.minorDir = Eigen::Vector2d(-out.majorDir.y(), out.majorDir.x());
  const double cc = c.kind == ConicKind::Ellipse
                        ? std::sqrt(std::max(out.semiMajor * out.semiMajor - out.semiMinor * out.semiMinor, 0.0))
                        : std::hypot(out.semiMajor, out.semiMinor);
  out.focus1 = HPoint(center + cc * out.majorDir);
  out.focus2 = HPoint(center - cc * out.majorDir);
  return out;
}

HPoint pointOnCentralConic(const CentralConicElements& e, double t) {
  return HPoint(e.center.xy() + e.semiMajor * std::cos(t) * e.majorDir +
                e.semiMinor * std::sin(t) * e.minorDir);
}

HLine polar(const Conic& c, const HPoint& p) {
  if (c.kind == ConicKind::Degenerate) throw std::runtime_error("polar: degenerate conic");
  return HLine(Eigen::Vector3d(c.M * p.v));
}

HPoint pole(const Conic& c, const HLine& l) {
  if (c.kind == ConicKind::Degenerate) throw std::runtime_error("pole: degenerate conic");
  return HPoint::homogeneous(c.M.lu().solve(l.v));
}

LineConicIntersection intersectConicLine(const Conic& c, const HLine& l) {
  if (l.isInfinity()) throw std::runtime_error("intersectConicLine: line at infinity");
  const Eigen::Vector3d p0(-l.v.x() * l.v.z(), -l.v.y() * l.v.z(), 1.0);
  const Eigen::Vector3d d(-l.v.y(), l.v.x(), 0.0);
  const double a = d.dot(c.M * d);
  const double b = p0.dot(c.M * d);
  const double cc = p0.dot(c.M * p0);

  LineConicIntersection out;
  auto at = [&](double t) { return HPoint::homogeneous(p0 + t * d); };
  if (std::abs(a) < 1e-14) {
    // direction conjugate to the line at infinity (e.g. parallel to a
    // parabola axis): a single affine intersection
    out.discriminant = b * b;
    if (std::abs(b) < 1e-14) return out;
    out.count = 1;
    out.first = out.second = at(-cc / (2.0 * b));
    return out;
  }
  const double disc = b * b - a * cc;
  out.discriminant = disc;
  const double tangentTol = 1e-12 * std::max(1.0, std::abs(b * b) + std::abs(a * cc));
  if (disc > tangentTol) {
    const double root = std::sqrt(disc);
    const double q = -(b + std::copysign(root, b));
    const double t1 = q / a;
    const double t2 = std::abs(q) > 0.0 ? cc / q : -b / a;
    out.count = 2;
    out.first = at(t1);
    out.second = at(t2);
  } else if (disc >= -tangentTol) {
    out.count = 1;
    out.first = out.second = at(-b / a);
  }
  return out;
}

double tangencyResidual(const Conic& c, const HLine& l) {
  return std::abs(intersectConicLine(c, l).discriminant);
}

HPoint tangencyPointOnLine(const Conic& c, const HLine& l) {
  if (l.isInfinity()) throw std::runtime_error("tangencyPointOnLine: line at infinity");
  const Eigen::Vector3d p0(-l.v.x() * l.v.z(), -l.v.y() * l.v.z(), 1.0);
  const Eigen::Vector3d d(-l.v.y(), l.v.x(), 0.0);
  const double a = d.dot(c.M * d);
  const double b = p0.dot(c.M * d);
  if (std::abs(a) < 1e-14) throw std::runtime_error("tangencyPointOnLine: no contact");
  return HPoint::homogeneous(p0 - (b / a) * d);
}

std::vector<HLine> tangentsFromPoint(const Conic& c, const HPoint& p) {
  if (std::abs(c.eval(p)) < kEps * p.v.squaredNorm()) return {polar(c, p)};
  const HLine pol = polar(c, p);
  if (pol.isInfinity()) return {};
  const LineConicIntersection x = intersectConicLine(c, pol);
  std::vector<HLine> out;
  if (x.count >= 1) out.push_back(join(p, x.first));
  if (x.count == 2) out.push_back(join(p, x.second));
  return out;
}

Conic parabolaFromFocusDirectrix(const HPoint& focus, const HLine& directrix) {
  if (focus.isIdeal()) throw std::runtime_error("parabolaFromFocusDirectrix: ideal focus");
  if (directrix.isInfinity())
    throw std::runtime_error("parabolaFromFocusDirectrix: directrix at infinity");
  if (std::abs(directrix.eval(focus)) < 1e-12)
    throw std::runtime_error("parabolaFromFocusDirectrix: focus on directrix");
  const double fx = focus.x(), fy = focus.y();
  const double l = directrix.v.x(), m = directrix.v.y(), n = directrix.v.z();
  Eigen::Matrix3d mtx;
  mtx << 1.0 - l * l, -l * m, -fx - l * n,
         -l * m, 1.0 - m * m, -fy - m * n,
         -fx - l * n, -fy - m * n, fx * fx + fy * fy - n * n;
  Conic c = conicFromMatrix(mtx);
  if (c.kind != ConicKind::Parabola)
    throw std::runtime_error("parabolaFromFocusDirectrix: construction degenerated");
  return c;
}

double sampsonDistance(const Conic& c, const HPoint& p) {
  const double alg = c.eval(p);
  const Eigen::Vector3d g3 = 2.0 * (c.M * p.v);
  const double gn = g3.head<2>().norm();
  if (gn < 1e-300) return std::abs(alg) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::abs(alg) / gn;
}

}  // namespace ponpar

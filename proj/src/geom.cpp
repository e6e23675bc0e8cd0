#include "ponpar/geom.hpp"

#include <cmath>

namespace ponpar {

namespace {
// |w| below this fraction of |(x, y)| marks a point at infinity.
constexpr double kIdealRatio = 1e-13;

void requireFinite(const HPoint& p, const char* what) {
  if (p.isIdeal()) throw std::runtime_error(std::string(what) + ": ideal point");
}
}  // namespace

HPoint HPoint::homogeneous(double x, double y, double w) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(w))
    throw std::runtime_error("HPoint: non-finite homogeneous triple");
  const double s = std::hypot(x, y);
  const double aw = std::abs(w);
  if (s == 0.0 && aw == 0.0) throw std::runtime_error("HPoint: zero homogeneous triple");
  if (aw > kIdealRatio * s) return HPoint(x / w, y / w);
  double dx = x / s, dy = y / s;
  if (dx < 0.0 || (dx == 0.0 && dy < 0.0)) {
    dx = -dx;
    dy = -dy;
  }
  HPoint p;
  p.v = Eigen::Vector3d(dx, dy, 0.0);
  return p;
}

HLine::HLine(double l, double m, double n) {
  if (!std::isfinite(l) || !std::isfinite(m) || !std::isfinite(n))
    throw std::runtime_error("HLine: non-finite homogeneous triple");
  const double s = std::hypot(l, m);
  const double an = std::abs(n);
  if (s == 0.0 && an == 0.0) throw std::runtime_error("HLine: zero homogeneous triple");
  if (s <= kIdealRatio * an) {
    v = Eigen::Vector3d(0.0, 0.0, 1.0);
    return;
  }
  double ll = l / s, mm = m / s, nn = n / s;
  if (ll < 0.0 || (ll == 0.0 && mm < 0.0)) {
    ll = -ll;
    mm = -mm;
    nn = -nn;
  }
  v = Eigen::Vector3d(ll, mm, nn);
}

HLine join(const HPoint& a, const HPoint& b) {
  const Eigen::Vector3d c = a.v.cross(b.v);
  if (c.norm() < 1e-12 * a.v.norm() * b.v.norm())
    throw std::runtime_error("degenerate join/meet");
  return HLine(c);
}

HPoint meet(const HLine& a, const HLine& b) {
  const Eigen::Vector3d c = a.v.cross(b.v);
  if (c.norm() < 1e-12 * a.v.norm() * b.v.norm())
    throw std::runtime_error("degenerate join/meet");
  return HPoint::homogeneous(c);
}

HPoint reflect(const HPoint& p, const HPoint& about) {
  requireFinite(p, "reflect");
  requireFinite(about, "reflect");
  return HPoint(2.0 * about.xy() - p.xy());
}

HPoint reflect(const HPoint& p, const HLine& mirror) {
  requireFinite(p, "reflect");
  if (mirror.isInfinity()) throw std::runtime_error("reflect: line at infinity");
  return HPoint(p.xy() - 2.0 * mirror.eval(p) * mirror.normal());
}

HPoint footOfPerpendicular(const HPoint& p, const HLine& line) {
  requireFinite(p, "footOfPerpendicular");
  if (line.isInfinity()) throw std::runtime_error("footOfPerpendicular: line at infinity");
  return HPoint(p.xy() - line.eval(p) * line.normal());
}

HPoint midpoint(const HPoint& a, const HPoint& b) {
  requireFinite(a, "midpoint");
  requireFinite(b, "midpoint");
  return HPoint(0.5 * (a.xy() + b.xy()));
}

double distance(const HPoint& a, const HPoint& b) {
  requireFinite(a, "distance");
  requireFinite(b, "distance");
  return (a.xy() - b.xy()).norm();
}

bool approxEq(const HPoint& a, const HPoint& b, double tol) {
  if (a.isIdeal() != b.isIdeal()) return false;
  return (a.v - b.v).norm() <= tol;
}

bool approxEq(const HLine& a, const HLine& b, double tol) {
  return (a.v - b.v).norm() <= tol;
}

}  // namespace ponpar

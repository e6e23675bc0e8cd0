#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ponpar/conics.hpp"

using namespace ponpar;
using std::numbers::pi;

namespace {
double conicGap(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return std::min((a - b).norm(), (a + b).norm());
}
}  // namespace

TEST_CASE("central conic round-trips its defining elements") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pos(0.3, 3.0), off(-2.0, 2.0), ang(0.0, pi);
  for (int i = 0; i < 100; ++i) {
    const HPoint c(off(rng), off(rng));
    double a = pos(rng), b = pos(rng);
    if (a < b) std::swap(a, b);
    if (a - b < 1e-3) continue;
    const double th = ang(rng);
    const Conic conic = conicFromCenterAxes(c, a, b, th);
    REQUIRE(conic.kind == ConicKind::Ellipse);
    const CentralConicElements el = centralConicElements(conic);
    CHECK(distance(el.center, c) < 1e-10);
    CHECK(el.semiMajor == doctest::Approx(a).epsilon(1e-10));
    CHECK(el.semiMinor == doctest::Approx(b).epsilon(1e-10));
    const Eigen::Vector2d want(std::cos(th), std::sin(th));
    CHECK(std::abs(el.majorDir.x() * want.y() - el.majorDir.y() * want.x()) < 1e-10);
    // foci at distance sqrt(a^2 - b^2) along the major axis
    const double f = std::sqrt(a * a - b * b);
    CHECK(std::abs(distance(el.focus1, c) - f) < 1e-9);
    CHECK(std::abs(distance(el.focus2, c) - f) < 1e-9);
    CHECK(distance(el.focus1, el.focus2) > f);  // opposite sides
    // all parametrized points satisfy the equation
    for (int j = 0; j < 8; ++j)
      CHECK(std::abs(conic.eval(pointOnCentralConic(el, 2.0 * pi * j / 8.0))) < 1e-12);
  }
}

TEST_CASE("five-point oracle reproduces a known ellipse") {
  const Conic conic = conicFromCenterAxes(HPoint(0.5, -0.7), 2.0, 1.1, 0.6);
  const CentralConicElements el = centralConicElements(conic);
  const std::array<HPoint, 5> pts = {
      pointOnCentralConic(el, 0.3), pointOnCentralConic(el, 1.2), pointOnCentralConic(el, 2.9),
      pointOnCentralConic(el, 4.0), pointOnCentralConic(el, 5.5)};
  const Eigen::Matrix3d n = oracle::conicThroughFive(pts);
  CHECK(conicGap(conic.M, n) < 1e-9);
}

TEST_CASE("classification by kind") {
  CHECK(conicFromCenterAxes(HPoint(0, 0), 1.0, 1.0, 0.0).kind == ConicKind::Ellipse);
  Eigen::Matrix3d h;  // x y = 1
  h << 0, 0.5, 0, 0.5, 0, 0, 0, 0, -1;
  CHECK(classifyConic(h / h.norm()) == ConicKind::Hyperbola);
  Eigen::Matrix3d p;  // y = x^2
  p << 1, 0, 0, 0, 0, -0.5, 0, -0.5, 0;
  CHECK(classifyConic(p / p.norm()) == ConicKind::Parabola);
  Eigen::Matrix3d d;  // x^2 - y^2 = 0, two lines
  d << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  CHECK(classifyConic(d / d.norm()) == ConicKind::Degenerate);
}

TEST_CASE("parabola focus/directrix round-trip and focal property") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> off(-2.0, 2.0), ang(0.0, 2.0 * pi);
  for (int i = 0; i < 100; ++i) {
    const HPoint f(off(rng), off(rng));
    const double th = ang(rng);
    const HPoint q(f.x() + 2.0 * std::cos(th), f.y() + 2.0 * std::sin(th));
    const HLine dir = join(q, HPoint(q.x() - std::sin(th), q.y() + std::cos(th)));
    const Conic par = parabolaFromFocusDirectrix(f, dir);
    REQUIRE(par.kind == ConicKind::Parabola);
    const ParabolaElements el = parabolaElements(par);
    CHECK(distance(el.focus, f) < 1e-10);
    CHECK(std::abs(el.directrix.eval(q)) < 1e-10);
    CHECK(std::abs(std::abs(el.directrix.eval(f)) - 2.0) < 1e-10);
    CHECK(el.focalDistance == doctest::Approx(1.0).epsilon(1e-9));
    for (double s : {-1.5, -0.2, 0.0, 0.7, 2.0}) {
      const HPoint pt = parabolaPoint(el, s);
      CHECK(std::abs(par.eval(pt)) < 1e-10);
      CHECK(std::abs(distance(pt, f) - std::abs(el.directrix.eval(pt))) < 1e-9);
    }
  }
}

TEST_CASE("tangents from an external point to the unit circle") {
  const Conic circle = conicFromCenterAxes(HPoint(0, 0), 1.0, 1.0, 0.0);
  const std::vector<HLine> ts = tangentsFromPoint(circle, HPoint(2.0, 0.0));
  REQUIRE(ts.size() == 2);
  const double rt3 = std::sqrt(3.0) / 2.0;
  bool sawUpper = false, sawLower = false;
  for (const HLine& t : ts) {
    CHECK(tangencyResidual(circle, t) < 1e-12);
    const HPoint touch = tangencyPointOnLine(circle, t);
    if (distance(touch, HPoint(0.5, rt3)) < 1e-9) sawUpper = true;
    if (distance(touch, HPoint(0.5, -rt3)) < 1e-9) sawLower = true;
  }
  CHECK(sawUpper);
  CHECK(sawLower);
  // a point on the conic has exactly one tangent, interior points none
  CHECK(tangentsFromPoint(circle, HPoint(1.0, 0.0)).size() == 1);
  CHECK(tangentsFromPoint(circle, HPoint(0.2, 0.1)).empty());
}

TEST_CASE("pole and polar invert each other") {
  const Conic conic = conicFromCenterAxes(HPoint(1.0, -0.5), 2.2, 0.9, 1.1);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> off(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const HPoint p(off(rng), off(rng));
    if (std::abs(conic.eval(p)) < 1e-4) continue;  // pole on the conic: polar is tangent
    const HLine l = polar(conic, p);
    CHECK(distance(pole(conic, l), p) < 1e-9);
  }
  // polar of an on-conic point is the tangent there
  const CentralConicElements el = centralConicElements(conic);
  const HPoint on = pointOnCentralConic(el, 0.8);
  const HLine t = polar(conic, on);
  CHECK(std::abs(t.eval(on)) < 1e-10);
  CHECK(tangencyResidual(conic, t) < 1e-10);
}

TEST_CASE("line-conic intersection agrees with the evaluation oracle") {
  const Conic conic = conicFromCenterAxes(HPoint(0.3, 0.2), 1.7, 0.8, 0.4);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> off(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const HPoint a(off(rng), off(rng)), b(off(rng), off(rng));
    if (distance(a, b) < 1e-3) continue;
    const HLine l = join(a, b);
    const LineConicIntersection hit = intersectConicLine(conic, l);
    const auto q = oracle::restrictedQuadratic(conic, a, (b.xy() - a.xy()).normalized());
    const double disc = q[1] * q[1] - 4.0 * q[0] * q[2];
    if (std::abs(disc) > 1e-6) CHECK((disc > 0) == (hit.count == 2));
    if (hit.count >= 1) CHECK(std::abs(conic.eval(hit.first)) < 1e-9);
    if (hit.count == 2) {
      CHECK(std::abs(conic.eval(hit.second)) < 1e-9);
      CHECK(std::abs(l.eval(hit.second)) < 1e-9);
    }
  }
  // a generic line through the center always cuts twice
  const LineConicIntersection through =
      intersectConicLine(conic, join(HPoint(0.3, 0.2), HPoint(4.0, 5.0)));
  CHECK(through.count == 2);
}

TEST_CASE("sampson distance approximates geometric distance near the conic") {
  const Conic conic = conicFromCenterAxes(HPoint(0, 0), 2.0, 1.0, 0.0);
  const CentralConicElements el = centralConicElements(conic);
  for (double t : {0.1, 0.9, 2.2, 4.4}) {
    const HPoint on = pointOnCentralConic(el, t);
    // step off the conic along the gradient by a known small distance
    const Eigen::Vector2d grad = (conic.M * on.v).head<2>().normalized();
    const double eps = 1e-4;
    const HPoint off(on.x() + eps * grad.x(), on.y() + eps * grad.y());
    const double s = sampsonDistance(conic, off);
    CHECK(s == doctest::Approx(eps).epsilon(0.02));
    CHECK(sampsonDistance(conic, on) < 1e-12);
  }
}

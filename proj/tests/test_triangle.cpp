#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ponpar/triangle.hpp"

using namespace ponpar;
using std::numbers::pi;

namespace {
const Triangle& rightTriangle() {  // 3-4-5
  static const Triangle t(HPoint(0, 0), HPoint(4, 0), HPoint(0, 3));
  return t;
}
const Triangle& scalene() {
  static const Triangle t(HPoint(0, 0), HPoint(4, 0), HPoint(1.2, 2.7));
  return t;
}
}  // namespace

TEST_CASE("frozen centers of the 3-4-5 triangle") {
  const Triangle& t = rightTriangle();
  CHECK(distance(triangleCenter(t, CenterId::X3), HPoint(2.0, 1.5)) < 1e-12);
  CHECK(distance(triangleCenter(t, CenterId::X1), HPoint(1.0, 1.0)) < 1e-12);
  // right angle at A puts the orthocenter there
  CHECK(distance(triangleCenter(t, CenterId::X4), t.A) < 1e-12);
}

TEST_CASE("centroid, Euler line, nine-point center") {
  const Triangle& t = scalene();
  const HPoint g = triangleCenter(t, CenterId::X2);
  CHECK(distance(g, HPoint((0 + 4 + 1.2) / 3.0, (0 + 0 + 2.7) / 3.0)) < 1e-12);
  const HPoint o = triangleCenter(t, CenterId::X3);
  const HPoint h = triangleCenter(t, CenterId::X4);
  // H = 3G - 2O
  CHECK(distance(h, HPoint(3 * g.x() - 2 * o.x(), 3 * g.y() - 2 * o.y())) < 1e-10);
  CHECK(distance(triangleCenter(t, CenterId::X5), midpoint(o, h)) < 1e-10);
  CHECK(distance(triangleCenter(t, CenterId::X140),
                 midpoint(o, triangleCenter(t, CenterId::X5))) < 1e-10);
  CHECK(distance(triangleCenter(t, CenterId::X1385),
                 midpoint(o, triangleCenter(t, CenterId::X1))) < 1e-10);
}

TEST_CASE("coordinate conversions round-trip") {
  const Triangle& t = scalene();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const HPoint p(u(rng), u(rng));
    const Eigen::Vector3d bary = pointToBarycentric(t, p);
    if (bary.cwiseAbs().minCoeff() < 1e-3 * bary.cwiseAbs().maxCoeff()) continue;
    CHECK(distance(barycentricToPoint(t, bary), p) < 1e-10);
    const Eigen::Vector3d tri = pointToTrilinear(t, p);
    CHECK(distance(trilinearToPoint(t, tri), p) < 1e-10);
    // the two systems agree through the side-length scaling
    const Eigen::Vector3d viaTri = trilinearToBarycentric(t, tri);
    CHECK((viaTri.normalized() - bary.normalized()).cwiseAbs().minCoeff() < 1e-10);
  }
}

TEST_CASE("conjugations are involutions and match the synthetic oracle") {
  const Triangle& t = scalene();
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  for (int i = 0; i < 100; ++i) {
    // interior point from positive barycentrics
    Eigen::Vector3d bary(u(rng), u(rng), u(rng));
    const HPoint p = barycentricToPoint(t, bary);
    const HPoint ig = conjugate(t, p, ConjugationKind::Isogonal);
    CHECK(distance(conjugate(t, ig, ConjugationKind::Isogonal), p) < 1e-10);
    const HPoint it = conjugate(t, p, ConjugationKind::Isotomic);
    CHECK(distance(conjugate(t, it, ConjugationKind::Isotomic), p) < 1e-10);
    CHECK(distance(ig, oracle::isogonalByReflection(t, p)) < 1e-8);
  }
  // the incenter is the isogonal fixed point, the centroid the isotomic one
  const HPoint x1 = triangleCenter(t, CenterId::X1);
  CHECK(distance(conjugate(t, x1, ConjugationKind::Isogonal), x1) < 1e-10);
  const HPoint x2 = triangleCenter(t, CenterId::X2);
  CHECK(distance(conjugate(t, x2, ConjugationKind::Isotomic), x2) < 1e-10);
}

TEST_CASE("isogonal conjugate of a circumcircle point is ideal") {
  const Triangle& t = scalene();
  const HPoint o = triangleCenter(t, CenterId::X3);
  const double r = distance(o, t.A);
  const HPoint on(o.x() + r * std::cos(0.9), o.y() + r * std::sin(0.9));
  CHECK(conjugate(t, on, ConjugationKind::Isogonal).isIdeal());
}

TEST_CASE("conjugate is undefined on sidelines") {
  const Triangle& t = scalene();
  CHECK_THROWS(conjugate(t, midpoint(t.A, t.B), ConjugationKind::Isogonal));
  CHECK_THROWS(conjugate(t, t.C, ConjugationKind::Isotomic));
}

TEST_CASE("pedal lines of a circumcircle point") {
  const Triangle& t = scalene();
  const HPoint o = triangleCenter(t, CenterId::X3);
  const HPoint h = triangleCenter(t, CenterId::X4);
  const double r = distance(o, t.A);
  for (double a : {0.3, 1.7, 2.9, 4.4, 5.8}) {
    const HPoint p(o.x() + r * std::cos(a), o.y() + r * std::sin(a));
    const PedalLines pl = simsonSteiner(t, p);
    REQUIRE(!pl.degenerate);
    CHECK(pl.collinearityResidual < 1e-10);
    const auto sides = t.sidelines();
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(sides[i].eval(pl.feet[i])) < 1e-10);          // foot on sideline
      CHECK(std::abs(pl.simson.eval(pl.feet[i])) < 1e-9);          // foot on pedal line
      CHECK(distance(pl.feet[i],
                     footOfPerpendicular(p, sides[i])) < 1e-10);   // true perpendicular foot
    }
    // the doubled pedal line passes through the orthocenter, parallel to the
    // pedal line, at twice the pole distance
    CHECK(std::abs(pl.steiner.eval(h)) < 1e-9);
    CHECK(std::abs(pl.simson.normal().dot(pl.steiner.direction())) < 1e-9);
    CHECK(std::abs(pl.steiner.eval(p) - 2.0 * pl.simson.eval(p)) < 1e-9);
  }
  // the pedal line of a vertex degenerates
  CHECK(simsonSteiner(t, t.B).degenerate);
}

TEST_CASE("named conics have their defining properties") {
  const Triangle& t = scalene();
  const Conic cc = namedConic(t, TriangleConic::Circumcircle);
  for (const HPoint& v : t.vertices()) CHECK(std::abs(cc.eval(v)) < 1e-12);
  CHECK(cc.kind == ConicKind::Ellipse);
  const CentralConicElements ccEl = centralConicElements(cc);
  CHECK(distance(ccEl.center, triangleCenter(t, CenterId::X3)) < 1e-10);
  CHECK(ccEl.semiMajor == doctest::Approx(ccEl.semiMinor).epsilon(1e-12));

  const Conic sce = namedConic(t, TriangleConic::SteinerCircumellipse);
  for (const HPoint& v : t.vertices()) CHECK(std::abs(sce.eval(v)) < 1e-12);
  CHECK(distance(centralConicElements(sce).center, triangleCenter(t, CenterId::X2)) < 1e-10);

  const Conic sie = namedConic(t, TriangleConic::SteinerInellipse);
  const auto sides = t.sidelines();
  const std::array<HPoint, 3> mids = {midpoint(t.B, t.C), midpoint(t.C, t.A),
                                      midpoint(t.A, t.B)};
  for (int i = 0; i < 3; ++i) {
    CHECK(tangencyResidual(sie, sides[i]) < 1e-10);
    CHECK(std::abs(sie.eval(mids[i])) < 1e-10);  // touches at the midpoints
  }

  const Conic mac = namedConic(t, TriangleConic::MacBeathInellipse);
  const CentralConicElements macEl = centralConicElements(mac);
  const HPoint x3 = triangleCenter(t, CenterId::X3), x4 = triangleCenter(t, CenterId::X4);
  const double gap = std::min(distance(macEl.focus1, x3) + distance(macEl.focus2, x4),
                              distance(macEl.focus1, x4) + distance(macEl.focus2, x3));
  CHECK(gap < 1e-9);
  for (int i = 0; i < 3; ++i) CHECK(tangencyResidual(mac, sides[i]) < 1e-10);

  const Conic bro = namedConic(t, TriangleConic::BrocardInellipse);
  const CentralConicElements broEl = centralConicElements(bro);
  const HPoint w1 = triangleCenter(t, CenterId::Omega1), w2 = triangleCenter(t, CenterId::Omega2);
  const double bgap = std::min(distance(broEl.focus1, w1) + distance(broEl.focus2, w2),
                               distance(broEl.focus1, w2) + distance(broEl.focus2, w1));
  CHECK(bgap < 1e-9);
  CHECK(distance(broEl.center, triangleCenter(t, CenterId::X39)) < 1e-9);

  const Conic kie = namedConic(t, TriangleConic::KiepertParabola);
  CHECK(kie.kind == ConicKind::Parabola);
  // inscribed, so tangent to the sidelines rather than through the vertices
  for (int i = 0; i < 3; ++i) CHECK(tangencyResidual(kie, sides[i]) < 1e-10);
  const ParabolaElements kieEl = parabolaElements(kie);
  CHECK(distance(kieEl.focus, triangleCenter(t, CenterId::X110)) < 1e-9);
  // its directrix is the Euler line
  CHECK(std::abs(kieEl.directrix.eval(x3)) < 1e-9);
  CHECK(std::abs(kieEl.directrix.eval(x4)) < 1e-9);
}

TEST_CASE("Brocard points are isogonal mates equidistant from the circumcenter") {
  const Triangle& t = scalene();
  const HPoint w1 = triangleCenter(t, CenterId::Omega1);
  const HPoint w2 = triangleCenter(t, CenterId::Omega2);
  CHECK(distance(conjugate(t, w1, ConjugationKind::Isogonal), w2) < 1e-9);
  // equidistant from the circumcenter
  const HPoint o = triangleCenter(t, CenterId::X3);
  CHECK(std::abs(distance(o, w1) - distance(o, w2)) < 1e-10);
}

TEST_CASE("the X99 point lies on both circumscribed conics") {
  const Triangle& t = scalene();
  const HPoint x99 = triangleCenter(t, CenterId::X99);
  CHECK(std::abs(namedConic(t, TriangleConic::Circumcircle).eval(x99)) < 1e-10);
  CHECK(std::abs(namedConic(t, TriangleConic::SteinerCircumellipse).eval(x99)) < 1e-10);
}

#include "ponpar/poncelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ponpar/triconics.hpp"

namespace ponpar {

namespace {

constexpr double kClosureTol = 1e-8;   // max allowed third-step return defect
constexpr double kDegenerateSep = 1e-6; // min vertex separation of a usable sample
constexpr double kOnOuterTol = 1e-7;

// Parameter angle of a point in the conic's own axis frame; monotone around
// the ellipse, consistent with outerPointAt.
double paramAngle(const CentralConicElements& el, const HPoint& p) {
  const Eigen::Vector2d d = p.xy() - el.center.xy();
  return std::atan2(d.dot(el.minorDir) / el.semiMinor, d.dot(el.majorDir) / el.semiMajor);
}

// Every point of the inner conic must be strictly interior to the outer one.
void assertNested(const CentralConicElements& outerEl, const Conic& inner) {
  const CentralConicElements in = centralConicElements(inner);
  for (int i = 0; i < 64; ++i) {
    const HPoint p = pointOnCentralConic(in, 2.0 * std::numbers::pi * i / 64.0);
    const Eigen::Vector2d d = p.xy() - outerEl.center.xy();
    const double u = d.dot(outerEl.majorDir) / outerEl.semiMajor;
    const double v = d.dot(outerEl.minorDir) / outerEl.semiMinor;
    if (u * u + v * v >= 1.0 - 1e-9)
      throw std::runtime_error("buildFamily: inner conic not strictly inside outer");
  }
}

std::complex<double> toComplex(const HPoint& p) { return {p.x(), p.y()}; }

}  // namespace

const char* familyKindName(FamilyKind k) {
  switch (k) {
    case FamilyKind::Inellipse: return "inellipse";
    case FamilyKind::Bicentric: return "bicentric";
    case FamilyKind::MacBeath: return "macbeath";
    case FamilyKind::Brocard: return "brocard";
    case FamilyKind::Homothetic: return "homothetic";
    case FamilyKind::CircumInconic: return "circum-inconic";
  }
  return "unknown";
}

FamilySpec FamilySpec::inellipse(double R, double alpha) {
  FamilySpec s;
  s.kind = FamilyKind::Inellipse;
  s.R = R;
  s.alpha = alpha;
  return s;
}

FamilySpec FamilySpec::bicentric(double R, double r) {
  FamilySpec s;
  s.kind = FamilyKind::Bicentric;
  s.R = R;
  s.r = r;
  return s;
}

FamilySpec FamilySpec::macbeath(const Triangle& seed) {
  FamilySpec s;
  s.kind = FamilyKind::MacBeath;
  s.seed = seed;
  return s;
}

FamilySpec FamilySpec::brocard(const Triangle& seed) {
  FamilySpec s;
  s.kind = FamilyKind::Brocard;
  s.seed = seed;
  return s;
}

FamilySpec FamilySpec::homothetic(const Triangle& seed) {
  FamilySpec s;
  s.kind = FamilyKind::Homothetic;
  s.seed = seed;
  return s;
}

FamilySpec FamilySpec::circumInconic(const Triangle& seed, const Eigen::Vector3d& perspectorBary) {
  FamilySpec s;
  s.kind = FamilyKind::CircumInconic;
  s.seed = seed;
  s.perspectorBary = perspectorBary;
  return s;
}

Family buildFamily(const FamilySpec& spec) {
  Family fam;
  fam.kind = spec.kind;
  switch (spec.kind) {
    case FamilyKind::Inellipse: {
      if (!(spec.alpha > 0.0 && spec.alpha < spec.R))
        throw std::invalid_argument("buildFamily: inellipse needs 0 < alpha < R");
      fam.outer = conicFromCenterAxes(HPoint(0.0, 0.0), spec.R, spec.R, 0.0);
      fam.inner = conicFromCenterAxes(HPoint(0.0, 0.0), spec.alpha, spec.R - spec.alpha, 0.0);
      break;
    }
    case FamilyKind::Bicentric: {
      if (!(spec.r > 0.0 && spec.r <= 0.5 * spec.R))
        throw std::invalid_argument("buildFamily: bicentric needs 0 < r <= R/2");
      const double d = std::sqrt(spec.R * (spec.R - 2.0 * spec.r));
      fam.outer = conicFromCenterAxes(HPoint(0.0, 0.0), spec.R, spec.R, 0.0);
      fam.inner = conicFromCenterAxes(HPoint(d, 0.0), spec.r, spec.r, 0.0);
      break;
    }
    case FamilyKind::MacBeath: {
      if (!spec.seed) throw std::invalid_argument("buildFamily: seed triangle required");
      fam.outer = namedConic(*spec.seed, TriangleConic::Circumcircle);
      fam.inner = namedConic(*spec.seed, TriangleConic::MacBeathInellipse);
      break;
    }
    case FamilyKind::Brocard: {
      if (!spec.seed) throw std::invalid_argument("buildFamily: seed triangle required");
      fam.outer = namedConic(*spec.seed, TriangleConic::Circumcircle);
      fam.inner = namedConic(*spec.seed, TriangleConic::BrocardInellipse);
      break;
    }
    case FamilyKind::Homothetic: {
      if (!spec.seed) throw std::invalid_argument("buildFamily: seed triangle required");
      fam.outer = namedConic(*spec.seed, TriangleConic::SteinerCircumellipse);
      fam.inner = namedConic(*spec.seed, TriangleConic::SteinerInellipse);
      break;
    }
    case FamilyKind::CircumInconic: {
      if (!spec.seed) throw std::invalid_argument("buildFamily: seed triangle required");
      fam.outer = namedConic(*spec.seed, TriangleConic::Circumcircle);
      fam.inner = inconicFromPerspector(*spec.seed,
                                        barycentricToPoint(*spec.seed, spec.perspectorBary));
      if (fam.inner.kind != ConicKind::Ellipse)
        throw std::invalid_argument("buildFamily: perspector does not give an elliptic caustic");
      break;
    }
  }
  fam.outerEl = centralConicElements(fam.outer);
  fam.innerEl = centralConicElements(fam.inner);
  assertNested(fam.outerEl, fam.inner);

  double worst = 0.0;
  for (int i = 0; i < 32; ++i) {
    const HPoint p0 = outerPointAt(fam, 2.0 * std::numbers::pi * i / 32.0);
    HPoint p = p0;
    for (int step = 0; step < 3; ++step) p = nextVertex(fam, p, +1);
    worst = std::max(worst, distance(p, p0));
  }
  fam.closureError = worst;
  if (!(worst < kClosureTol)) throw std::runtime_error("Poncelet condition violated");
  return fam;
}

HPoint outerPointAt(const Family& fam, double t) { return pointOnCentralConic(fam.outerEl, t); }

HPoint nextVertex(const Family& fam, const HPoint& onOuter, int orientation) {
  if (sampsonDistance(fam.outer, onOuter) > kOnOuterTol)
    throw std::invalid_argument("nextVertex: point not on outer conic");
  const auto tangents = tangentsFromPoint(fam.inner, onOuter);
  if (tangents.size() != 2)
    throw std::runtime_error("nextVertex: expected two caustic tangents");

  const double phiP = paramAngle(fam.outerEl, onOuter);
  HPoint best;
  double bestGap = orientation > 0 ? 7.0 : -1.0; // outside [0, 2*pi]
  for (const HLine& L : tangents) {
    const auto hit = intersectConicLine(fam.outer, L);
    if (hit.count == 0) continue;
    // The chord meets the outer conic at P and one other point.
    HPoint q = hit.first;
    if (hit.count == 2 && distance(hit.second, onOuter) > distance(hit.first, onOuter))
      q = hit.second;
    double gap = std::fmod(paramAngle(fam.outerEl, q) - phiP + 4.0 * std::numbers::pi,
                           2.0 * std::numbers::pi);
    const bool better = orientation > 0 ? gap < bestGap : gap > bestGap;
    if (better) {
      bestGap = gap;
      best = q;
    }
  }
  if (bestGap < 0.0 || bestGap > 6.9)
    throw std::runtime_error("nextVertex: chord step failed");
  return best;
}

TriangleSample triangleAt(const Family& fam, double t) {
  TriangleSample s;
  const HPoint p1 = outerPointAt(fam, t);
  const HPoint p2 = nextVertex(fam, p1, +1);
  const HPoint p3 = nextVertex(fam, p2, +1);
  s.closureResidual = distance(nextVertex(fam, p3, +1), p1);
  const double sep =
      std::min({distance(p1, p2), distance(p2, p3), distance(p3, p1)});
  if (sep < kDegenerateSep) return s;
  try {
    s.tri.emplace(p1, p2, p3);
  } catch (const std::exception&) {
    // collinear beyond the separation guard: leave the sample flagged
  }
  return s;
}

std::complex<double> focalInvariant(const Family& fam, double focusAngle) {
  const auto& el = fam.outerEl;
  if (std::abs(el.semiMajor - el.semiMinor) > 1e-9 * el.semiMajor)
    throw std::invalid_argument("focalInvariant: outer conic must be a circle");
  const std::complex<double> o = toComplex(el.center);
  const std::complex<double> rot = std::polar(1.0, focusAngle);
  const double R = el.semiMajor;
  const std::complex<double> f1 = (toComplex(fam.innerEl.focus1) - o) / (R * rot);
  const std::complex<double> f2 = (toComplex(fam.innerEl.focus2) - o) / (R * rot);
  return f1 + f2 - f1 * f2;
}

HPoint vertexFormulaOracle(const Family& fam, double focusAngle, double t) {
  const TriangleSample s = triangleAt(fam, t);
  if (!s.ok()) throw std::runtime_error("vertexFormulaOracle: degenerate triangle sample");
  return vertexFormulaOracle(fam, focusAngle, *s.tri);
}

HPoint vertexFormulaOracle(const Family& fam, double focusAngle, const Triangle& tri) {
  const auto& el = fam.outerEl;
  if (std::abs(el.semiMajor - el.semiMinor) > 1e-9 * el.semiMajor)
    throw std::invalid_argument("vertexFormulaOracle: outer conic must be a circle");

  const std::complex<double> o = toComplex(el.center);
  const std::complex<double> rot = std::polar(1.0, focusAngle);
  const double R = el.semiMajor;
  auto frame = [&](const HPoint& p) {
    std::complex<double> z = (toComplex(p) - o) / (R * rot);
    return z / std::abs(z); // vertices live on the unit circle; kill drift
  };
  const std::complex<double> a = frame(tri.A);
  const std::complex<double> b = frame(tri.B);
  const std::complex<double> c = frame(tri.C);
  const std::complex<double> k = focalInvariant(fam, focusAngle);

  // Foot of the focus on the pedal line of the frame point 1, in closed form:
  // feet are (1 + u + v - uv)/2 over the three vertex pairs, whence the foot
  // on their common line is (3 + e1 - e2 + e3)/4; the family's focal
  // invariant k = f1 + f2 - f1*f2 turns e1 - e2 into k - conj(k) e3.
  const std::complex<double> v = (3.0 + k + (1.0 - std::conj(k)) * (a * b * c)) / 4.0;

  const std::complex<double> w = o + R * rot * v;
  return HPoint(w.real(), w.imag());
}

}  // namespace ponpar

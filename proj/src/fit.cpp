#include "ponpar/fit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ponpar {

namespace {

struct Normalizer {
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  double scale = 1.0;
  Eigen::Matrix3d h() const {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(0, 0) = m(1, 1) = scale;
    m(0, 2) = -scale * mu.x();
    m(1, 2) = -scale * mu.y();
    return m;
  }
};

Normalizer normalizer(std::span<const HPoint> pts) {
  Normalizer n;
  for (const auto& p : pts) n.mu += p.xy();
  n.mu /= static_cast<double>(pts.size());
  double mean = 0.0;
  for (const auto& p : pts) mean += (p.xy() - n.mu).norm();
  mean /= static_cast<double>(pts.size());
  n.scale = mean > 1e-300 ? std::numbers::sqrt2 / mean : 1.0;
  return n;
}

void requireFinitePoints(std::span<const HPoint> pts, size_t minCount, const char* what) {
  if (pts.size() < minCount)
    throw std::runtime_error(std::string(what) + ": too few samples");
  for (const auto& p : pts) {
    if (p.isIdeal()) throw std::runtime_error(std::string(what) + ": ideal sample");
  }
}

void finishResiduals(FitReport& r, const std::vector<double>& res) {
  double sq = 0.0;
  for (double d : res) {
    sq += d * d;
    r.maxResidual = std::max(r.maxResidual, std::abs(d));
  }
  r.rms = res.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(res.size()));
  r.nSamples = static_cast<int>(res.size());
}

double lineRmsOf(std::span<const HPoint> pts) {
  FitReport r = fitLine(pts);
  return r.rms;
}

// Gram matrix of [q0 q1 q2 | x y 1] columns where (q0,q1,q2) = (x^2, xy, y^2).
struct ParabolaGram {
  Eigen::Matrix<double, 6, 6> g = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix3d schur;      // g11 - g12 g22^{-1} g21
  Eigen::Matrix3d g22inv_g21;
};

ParabolaGram parabolaGram(std::span<const HPoint> pts, const Normalizer& n) {
  ParabolaGram pg;
  for (const auto& p : pts) {
    const Eigen::Vector2d q = n.scale * (p.xy() - n.mu);
    Eigen::Matrix<double, 6, 1> row;
    row << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(), q.x(), q.y(), 1.0;
    pg.g += row * row.transpose();
  }
  const Eigen::Matrix3d g11 = pg.g.topLeftCorner<3, 3>();
  const Eigen::Matrix3d g12 = pg.g.topRightCorner<3, 3>();
  const Eigen::Matrix3d g22 = pg.g.bottomRightCorner<3, 3>();
  const Eigen::Matrix3d g22inv = g22.fullPivLu().inverse();
  pg.g22inv_g21 = g22inv * g12.transpose();
  pg.schur = g11 - g12 * pg.g22inv_g21;
  return pg;
}

double parabolaSse(const ParabolaGram& pg, double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  const Eigen::Vector3d u(c * c, 2.0 * c * s, s * s);
  return u.dot(pg.schur * u);
}

}  // namespace

const char* modelName(ModelKind m) {
  switch (m) {
    case ModelKind::Point: return "point";
    case ModelKind::Line: return "line";
    case ModelKind::Circle: return "circle";
    case ModelKind::Ellipse: return "ellipse";
    case ModelKind::Parabola: return "parabola";
    case ModelKind::Hyperbola: return "hyperbola";
    case ModelKind::None: return "none";
  }
  return "unknown";
}

FitReport fitPoint(std::span<const HPoint> pts) {
  requireFinitePoints(pts, 1, "fitPoint");
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mu += p.xy();
  mu /= static_cast<double>(pts.size());
  FitReport r;
  r.model = ModelKind::Point;
  r.point = HPoint(mu);
  std::vector<double> res;
  res.reserve(pts.size());
  for (const auto& p : pts) res.push_back((p.xy() - mu).norm());
  finishResiduals(r, res);
  return r;
}

FitReport fitLine(std::span<const HPoint> pts) {
  requireFinitePoints(pts, 3, "fitLine");
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mu += p.xy();
  mu /= static_cast<double>(pts.size());
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) {
    const Eigen::Vector2d d = p.xy() - mu;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(scatter);
  const Eigen::Vector2d n = es.eigenvectors().col(0);
  FitReport r;
  r.model = ModelKind::Line;
  r.line = HLine(n.x(), n.y(), -n.dot(mu));
  std::vector<double> res;
  res.reserve(pts.size());
  for (const auto& p : pts) res.push_back(r.line.eval(p));
  finishResiduals(r, res);
  return r;
}

FitReport fitCircle(std::span<const HPoint> pts) {
  requireFinitePoints(pts, 4, "fitCircle");
  FitReport r;
  double spread = 0.0;
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mu += p.xy();
  mu /= static_cast<double>(pts.size());
  for (const auto& p : pts) spread = std::max(spread, (p.xy() - mu).norm());
  if (lineRmsOf(pts) < 1e-12 * (1.0 + spread)) return r;  // collinear: no circle

  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd rhs(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector2d q = pts[i].xy() - mu;
    a(static_cast<int>(i), 0) = q.x();
    a(static_cast<int>(i), 1) = q.y();
    a(static_cast<int>(i), 2) = 1.0;
    rhs(static_cast<int>(i)) = -q.squaredNorm();
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
  const Eigen::Vector2d center = mu - 0.5 * sol.head<2>();
  const double rad2 = 0.25 * sol.head<2>().squaredNorm() - sol(2);
  if (!(rad2 > 0.0) || !std::isfinite(rad2) || std::sqrt(rad2) > 1e9) return r;

  r.model = ModelKind::Circle;
  r.point = HPoint(center);
  r.radius = std::sqrt(rad2);
  r.conic = conicFromCenterAxes(r.point, r.radius, r.radius, 0.0);
  std::vector<double> res;
  res.reserve(pts.size());
  for (const auto& p : pts) res.push_back((p.xy() - center).norm() - r.radius);
  finishResiduals(r, res);
  return r;
}

FitReport fitConic(std::span<const HPoint> pts) {
  requireFinitePoints(pts, 6, "fitConic");
  const Normalizer n = normalizer(pts);
  Eigen::MatrixXd design(pts.size(), 6);
  for (size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector2d q = n.scale * (pts[i].xy() - n.mu);
    design.row(static_cast<int>(i)) << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(), q.x(),
        q.y(), 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinV);
  const Eigen::Matrix<double, 6, 1> k = svd.matrixV().col(5);
  Eigen::Matrix3d mn;
  mn << k(0), k(1) / 2, k(3) / 2,
        k(1) / 2, k(2), k(4) / 2,
        k(3) / 2, k(4) / 2, k(5);
  const Eigen::Matrix3d h = n.h();
  FitReport r;
  Conic c;
  try {
    c = conicFromMatrix(h.transpose() * mn * h);
  } catch (const std::exception&) {
    return r;
  }
  if (c.kind == ConicKind::Degenerate) return r;
  r.model = c.kind == ConicKind::Ellipse    ? ModelKind::Ellipse
            : c.kind == ConicKind::Parabola ? ModelKind::Parabola
                                            : ModelKind::Hyperbola;
  r.conic = c;
  std::vector<double> res;
  res.reserve(pts.size());
  for (const auto& p : pts) res.push_back(sampsonDistance(c, p));
  finishResiduals(r, res);
  return r;
}

FitReport fitParabola(std::span<const HPoint> pts) {
  requireFinitePoints(pts, 5, "fitParabola");
  const Normalizer n = normalizer(pts);
  const ParabolaGram pg = parabolaGram(pts, n);

  // coarse scan over the axis angle, then golden-section refinement
  constexpr int kScan = 360;
  double bestPsi = 0.0, bestSse = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double psi = std::numbers::pi * i / kScan;
    const double sse = parabolaSse(pg, psi);
    if (sse < bestSse) {
      bestSse = sse;
      bestPsi = psi;
    }
  }
  const double step = std::numbers::pi / kScan;
  double lo = bestPsi - step, hi = bestPsi + step;
  constexpr double kGolden = 0.61803398874989484;
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = parabolaSse(pg, x1), f2 = parabolaSse(pg, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = parabolaSse(pg, x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = parabolaSse(pg, x2);
    }
  }
  const double psi = 0.5 * (lo + hi);
  const double c = std::cos(psi), s = std::sin(psi);
  const Eigen::Vector3d u(c * c, 2.0 * c * s, s * s);
  const Eigen::Vector3d beta = -(pg.g22inv_g21 * u);
  Eigen::Matrix3d mn;
  mn << u(0), u(1) / 2, beta(0) / 2,
        u(1) / 2, u(2), beta(1) / 2,
        beta(0) / 2, beta(1) / 2, beta(2);
  const Eigen::Matrix3d h = n.h();
  FitReport r;
  Conic conic;
  try {
    conic = conicFromMatrix(h.transpose() * mn * h);
  } catch (const std::exception&) {
    return r;
  }
  if (conic.kind != ConicKind::Parabola) return r;
  r.model = ModelKind::Parabola;
  r.conic = conic;
  std::vector<double> res;
  res.reserve(pts.size());
  for (const auto& p : pts) res.push_back(sampsonDistance(conic, p));
  finishResiduals(r, res);
  return r;
}

FitReport commonPoint(std::span<const HLine> lines) {
  if (lines.size() < 3) throw std::runtime_error("commonPoint: need at least 3 lines");
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (const auto& l : lines) {
    const Eigen::Vector2d n = l.normal();
    a += n * n.transpose();
    rhs -= l.v.z() * n;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
  FitReport r;
  if (es.eigenvalues()(0) <= 0.0 ||
      es.eigenvalues()(1) / es.eigenvalues()(0) > 1e12)
    return r;  // near-parallel pencil
  const Eigen::Vector2d p = a.ldlt().solve(rhs);
  r.model = ModelKind::Point;
  r.point = HPoint(p);
  std::vector<double> res;
  res.reserve(lines.size());
  for (const auto& l : lines) res.push_back(l.eval(r.point));
  finishResiduals(r, res);
  return r;
}

std::vector<HPoint> envelopePoints(std::span<const HLine> lines, int& dropped) {
  if (lines.size() < 8) throw std::runtime_error("envelopePoints: need at least 8 lines");
  // Pairwise intersections of consecutive lines sit off the envelope by
  // O(h^2); the midpoint of two consecutive such intersections cancels the
  // leading term, so the returned characteristic points are O(h^4) accurate.
  std::vector<std::pair<size_t, HPoint>> raw;
  raw.reserve(lines.size());
  dropped = 0;
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    const HLine& a = lines[i];
    const HLine& b = lines[i + 1];
    const double cross = a.v.x() * b.v.y() - a.v.y() * b.v.x();
    if (std::abs(cross) < 1e-10) {
      ++dropped;
      continue;
    }
    HPoint p = meet(a, b);
    if (p.isIdeal()) {
      ++dropped;
      continue;
    }
    raw.emplace_back(i, p);
  }
  std::vector<HPoint> out;
  out.reserve(raw.size());
  for (size_t j = 0; j + 1 < raw.size(); ++j) {
    if (raw[j + 1].first != raw[j].first + 1) continue;  // gap: midpoint rule invalid
    out.push_back(midpoint(raw[j].second, raw[j + 1].second));
  }
  return out;
}

Predicate parallelLines(const HLine& a, const HLine& b, double tol) {
  // residual is the sine of the angle between the normals, scale-free
  const Eigen::Vector2d na = a.v.head<2>().normalized();
  const Eigen::Vector2d nb = b.v.head<2>().normalized();
  const double cross = na.x() * nb.y() - na.y() * nb.x();
  return {std::abs(cross) < tol, std::abs(cross)};
}

Predicate collinearPoints(const HPoint& a, const HPoint& b, const HPoint& c, double tol) {
  const Eigen::Vector2d u = b.xy() - a.xy(), v = c.xy() - a.xy();
  const double area = 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
  return {area < tol, area};
}

Predicate stationaryPoint(std::span<const HPoint> pts, double tol) {
  double diam = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      diam = std::max(diam, distance(pts[i], pts[j]));
  return {diam < tol, diam};
}

Predicate pointOnConic(const Conic& c, const HPoint& p, double tol) {
  const double d = sampsonDistance(c, p);
  return {d < tol, d};
}

Predicate concentricConics(const CentralConicElements& a, const CentralConicElements& b,
                           double tol) {
  const double d = distance(a.center, b.center);
  return {d < tol, d};
}

Predicate axisAlignedConics(const CentralConicElements& a, const CentralConicElements& b,
                            double tol) {
  const double angA = std::atan2(a.majorDir.y(), a.majorDir.x());
  const double angB = std::atan2(b.majorDir.y(), b.majorDir.x());
  const double r = std::abs(std::remainder(angA - angB, std::numbers::pi / 2));
  return {r < tol, r};
}

Predicate conicsTangentAt(const Conic& a, const Conic& b, const HPoint& p, double tol) {
  const double ra = sampsonDistance(a, p);
  const double rb = sampsonDistance(b, p);
  const HLine pa = polar(a, p), pb = polar(b, p);
  const double cross =
      std::abs(pa.v.x() * pb.v.y() - pa.v.y() * pb.v.x());
  const double res = std::max({ra, rb, cross});
  return {res < tol, res};
}

ModelSelection selectModel(std::span<const HPoint> pts, double tol) {
  ModelSelection sel;
  FitReport point = fitPoint(pts);
  sel.pointDiameter = stationaryPoint(pts, tol).residual;
  if (sel.pointDiameter < tol) {
    sel.chosen = point;
    return sel;
  }
  FitReport line = fitLine(pts);
  sel.lineRms = line.rms;
  if (line.rms < tol) {
    sel.chosen = line;
    return sel;
  }
  FitReport circle = fitCircle(pts);
  sel.circleRms = circle.model == ModelKind::Circle ? circle.rms
                                                    : std::numeric_limits<double>::infinity();
  if (circle.model == ModelKind::Circle && circle.rms < tol) {
    sel.chosen = circle;
    return sel;
  }
  FitReport conic = fitConic(pts);
  sel.conicRms = conic.model == ModelKind::None ? std::numeric_limits<double>::infinity()
                                                : conic.rms;
  if (conic.model != ModelKind::None && conic.rms < tol) {
    sel.chosen = conic;
    return sel;
  }
  sel.chosen = FitReport{};
  return sel;
}

}  // namespace ponpar

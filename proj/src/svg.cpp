#include "ponpar/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace ponpar {

namespace {

constexpr double kSide = 800.0; // pixel viewport is square

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) : lo_(lo), hi_(hi) {
  // Keep the aspect ratio square so circles render as circles.
  const Eigen::Vector2d c = 0.5 * (lo + hi);
  const double half = 0.5 * std::max(hi.x() - lo.x(), hi.y() - lo.y());
  lo_ = c - Eigen::Vector2d(half, half);
  hi_ = c + Eigen::Vector2d(half, half);
}

SvgPlot SvgPlot::aroundConic(const Conic& outer) {
  const CentralConicElements el = centralConicElements(outer);
  const double a = el.semiMajor, b = el.semiMinor;
  const Eigen::Vector2d& u = el.majorDir;
  const Eigen::Vector2d& v = el.minorDir;
  const Eigen::Vector2d ext(std::hypot(a * u.x(), b * v.x()), std::hypot(a * u.y(), b * v.y()));
  const Eigen::Vector2d c = el.center.xy();
  return SvgPlot(c - 1.1 * ext, c + 1.1 * ext);
}

Eigen::Vector2d SvgPlot::toPixel(const Eigen::Vector2d& w) const {
  const double sx = kSide / (hi_.x() - lo_.x());
  const double sy = kSide / (hi_.y() - lo_.y());
  return {(w.x() - lo_.x()) * sx, (hi_.y() - w.y()) * sy};
}

void SvgPlot::addPolyline(const std::vector<HPoint>& pts, const std::string& stroke, double width,
                          bool dashed, bool closed) {
  if (pts.size() < 2) return;
  std::ostringstream os;
  os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << stroke
     << "\" stroke-width=\"" << num(width) << "\"";
  if (dashed) os << " stroke-dasharray=\"6 4\"";
  os << " points=\"";
  for (const HPoint& p : pts) {
    if (p.isIdeal()) continue;
    const Eigen::Vector2d q = toPixel(p.xy());
    os << num(q.x()) << "," << num(q.y()) << " ";
  }
  os << "\"/>";
  elems_.push_back(os.str());
}

void SvgPlot::addConic(const Conic& c, const std::string& stroke, double width, bool dashed) {
  const ConicKind kind = c.kind;
  std::vector<HPoint> pts;
  if (kind == ConicKind::Ellipse) {
    const CentralConicElements el = centralConicElements(c);
    for (int i = 0; i <= 256; ++i)
      pts.push_back(pointOnCentralConic(el, 2.0 * std::numbers::pi * i / 256.0));
    addPolyline(pts, stroke, width, dashed, true);
  } else if (kind == ConicKind::Parabola) {
    const ParabolaElements el = parabolaElements(c);
    const double span = (hi_ - lo_).norm();
    const double smax = std::sqrt(std::max(4.0 * el.focalDistance * span, 1e-12)) + span;
    for (int i = 0; i <= 256; ++i)
      pts.push_back(parabolaPoint(el, -smax + 2.0 * smax * i / 256.0));
    addPolyline(pts, stroke, width, dashed, false);
  }
  // other kinds are not drawn
}

void SvgPlot::addLine(const HLine& line, const std::string& stroke, double width, bool dashed) {
  if (line.isInfinity()) return;
  // Clip the infinite line to the viewport rectangle.
  const Eigen::Vector2d n = line.normal();
  const Eigen::Vector2d d = line.direction();
  const Eigen::Vector2d p0 = -line.v.z() * n; // closest point to origin
  double tmin = -1e18, tmax = 1e18;
  auto clip = [&](double denom, double delta) {
    if (std::abs(denom) < 1e-15) return delta >= 0.0;
    const double t = delta / denom;
    if (denom > 0.0) tmax = std::min(tmax, t); else tmin = std::max(tmin, t);
    return tmin <= tmax;
  };
  if (!clip(-d.x(), p0.x() - lo_.x())) return;
  if (!clip(d.x(), hi_.x() - p0.x())) return;
  if (!clip(-d.y(), p0.y() - lo_.y())) return;
  if (!clip(d.y(), hi_.y() - p0.y())) return;
  if (tmin > tmax) return;
  const Eigen::Vector2d a = toPixel(p0 + tmin * d);
  const Eigen::Vector2d b = toPixel(p0 + tmax * d);
  std::ostringstream os;
  os << "<line x1=\"" << num(a.x()) << "\" y1=\"" << num(a.y()) << "\" x2=\"" << num(b.x())
     << "\" y2=\"" << num(b.y()) << "\" stroke=\"" << stroke << "\" stroke-width=\""
     << num(width) << "\"";
  if (dashed) os << " stroke-dasharray=\"6 4\"";
  os << "/>";
  elems_.push_back(os.str());
}

void SvgPlot::addMarker(const HPoint& p, const std::string& fill, const std::string& label) {
  if (p.isIdeal()) return;
  const Eigen::Vector2d q = toPixel(p.xy());
  std::ostringstream os;
  os << "<circle cx=\"" << num(q.x()) << "\" cy=\"" << num(q.y())
     << "\" r=\"4\" fill=\"" << fill << "\"/>";
  if (!label.empty())
    os << "<text x=\"" << num(q.x() + 6.0) << "\" y=\"" << num(q.y() - 6.0)
       << "\" font-size=\"14\" font-family=\"sans-serif\" fill=\"" << fill << "\">" << label
       << "</text>";
  elems_.push_back(os.str());
}

std::string SvgPlot::render() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const std::string& e : elems_) os << e << "\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace ponpar

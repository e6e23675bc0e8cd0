#pragma once

#include <string>
#include <vector>

#include "ponpar/conics.hpp"

namespace ponpar {

/// Minimal deterministic SVG builder for experiment plots. World coordinates
/// in, fixed 800x800 pixel viewport out, y axis flipped to point up.
class SvgPlot {
 public:
  SvgPlot(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi);

  /// Viewport = bounding box of an ellipse/circle plus a 10% margin.
  static SvgPlot aroundConic(const Conic& outer);

  void addPolyline(const std::vector<HPoint>& pts, const std::string& stroke, double width,
                   bool dashed = false, bool closed = false);
  void addConic(const Conic& c, const std::string& stroke, double width, bool dashed = false);
  void addLine(const HLine& line, const std::string& stroke, double width, bool dashed = false);
  void addMarker(const HPoint& p, const std::string& fill, const std::string& label = "");

  std::string render() const;

 private:
  Eigen::Vector2d toPixel(const Eigen::Vector2d& world) const;

  Eigen::Vector2d lo_, hi_;
  std::vector<std::string> elems_;
};

}  // namespace ponpar

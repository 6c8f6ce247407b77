#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "berwald/types.hpp"

namespace berwald {

/// Minimal SVG writer using only <path>, <circle> and <line>.
///
/// Shapes are collected in world coordinates. On output the viewport is the
/// tight bounding box of all shape points plus a 10% margin, scaled so the
/// longer side is `pixels` wide, with the u² axis pointing up. Numbers are
/// printed with six decimals so the text is stable across runs.
class SvgCanvas {
 public:
  explicit SvgCanvas(double pixels = 800.0) : pixels_(pixels) {}

  /// Polyline through the points; `style` is pasted as attributes.
  void path(const std::vector<Point2>& points, const std::string& style);
  /// Circle with a radius in output pixels.
  void circle(Point2 center, double radius_px, const std::string& style);
  void line(Point2 from, Point2 to, const std::string& style);

  void write(std::ostream& out) const;

 private:
  struct Shape {
    enum class Kind { path, circle, line } kind;
    std::vector<Point2> points;
    double radius = 0.0;
    std::string style;
  };
  double pixels_;
  std::vector<Shape> shapes_;
};

}  // namespace berwald

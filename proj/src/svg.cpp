#include "berwald/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace berwald {

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);  // no "-0.000000"
  std::string s(buf);
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

void SvgCanvas::path(const std::vector<Point2>& points, const std::string& style) {
  if (points.size() < 2) return;
  shapes_.push_back({Shape::Kind::path, points, 0.0, style});
}

void SvgCanvas::circle(Point2 center, double radius_px, const std::string& style) {
  shapes_.push_back({Shape::Kind::circle, {center}, radius_px, style});
}

void SvgCanvas::line(Point2 from, Point2 to, const std::string& style) {
  shapes_.push_back({Shape::Kind::line, {from, to}, 0.0, style});
}

void SvgCanvas::write(std::ostream& out) const {
  double lo1 = std::numeric_limits<double>::infinity(), lo2 = lo1;
  double hi1 = -lo1, hi2 = -lo1;
  for (const Shape& s : shapes_)
    for (const Point2& p : s.points) {
      lo1 = std::min(lo1, p.u1);
      hi1 = std::max(hi1, p.u1);
      lo2 = std::min(lo2, p.u2);
      hi2 = std::max(hi2, p.u2);
    }
  if (shapes_.empty()) lo1 = lo2 = 0.0, hi1 = hi2 = 1.0;
  double w = hi1 - lo1, h = hi2 - lo2;
  const double extent = std::max({w, h, 1e-9});
  lo1 -= 0.1 * extent;
  lo2 -= 0.1 * extent;
  w += 0.2 * extent;
  h += 0.2 * extent;
  const double k = pixels_ / std::max(w, h);
  const double top = lo2 + h;
  auto X = [&](Point2 p) { return fixed((p.u1 - lo1) * k); };
  auto Y = [&](Point2 p) { return fixed((top - p.u2) * k); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w * k) << "\" height=\"" << fixed(h * k)
      << "\" viewBox=\"0 0 " << fixed(w * k) << " " << fixed(h * k) << "\">\n";
  for (const Shape& s : shapes_) {
    switch (s.kind) {
      case Shape::Kind::path: {
        out << "<path d=\"";
        for (std::size_t n = 0; n < s.points.size(); ++n)
          out << (n == 0 ? "M" : " L") << X(s.points[n]) << "," << Y(s.points[n]);
        out << "\" fill=\"none\" " << s.style << "/>\n";
        break;
      }
      case Shape::Kind::circle:
        out << "<circle cx=\"" << X(s.points[0]) << "\" cy=\"" << Y(s.points[0]) << "\" r=\"" << fixed(s.radius)
            << "\" " << s.style << "/>\n";
        break;
      case Shape::Kind::line:
        out << "<line x1=\"" << X(s.points[0]) << "\" y1=\"" << Y(s.points[0]) << "\" x2=\"" << X(s.points[1])
            << "\" y2=\"" << Y(s.points[1]) << "\" " << s.style << "/>\n";
        break;
    }
  }
  out << "</svg>\n";
}

}  // namespace berwald

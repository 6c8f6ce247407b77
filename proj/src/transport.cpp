#include "berwald/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace berwald {

namespace {

constexpr double kCurveStep = 1e-6;

// Columns integrated together: the requested vector and the two basis vectors.
using State = std::array<Vec2, 3>;

// A^k_j = (c^i)' Γ^k_ij at c(t); the transport equation is X' = −A X.
Mat2 transport_generator(const Connection2D& conn, const Curve& curve, double t) {
  const Point2 p = curve(t);
  const Vec2 v = curve.velocity(t);
  if (!v.is_finite()) throw NonFiniteError("curve '" + curve.name + "' has a non-finite velocity");
  const Christoffel g = conn(p);
  Mat2 a;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) a(k, j) = v.x * g(k, 0, j) + v.y * g(k, 1, j);
  return a;
}

State rate(const Mat2& a, const State& s) {
  State r;
  for (std::size_t n = 0; n < s.size(); ++n) r[n] = -(a * s[n]);
  return r;
}

State axpy(const State& s, double h, const State& k) {
  State r;
  for (std::size_t n = 0; n < s.size(); ++n) r[n] = s[n] + h * k[n];
  return r;
}

}  // namespace

// ─── Curve ──────────────────────────────────────────────────────────────────

Vec2 Curve::velocity(double t) const {
  if (c_dot) return c_dot(t);
  return (c(t + kCurveStep) - c(t - kCurveStep)) / (2.0 * kCurveStep);
}

Curve Curve::restricted(double a, double b) const {
  Curve r = *this;
  r.t0 = a;
  r.t1 = b;
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::erase_if(r.breaks, [lo, hi](double t) { return !(t > lo && t < hi); });
  return r;
}

Curve Curve::segment(Point2 from, Point2 to) {
  const Vec2 d = to - from;
  return {"segment", [from, d](double t) { return from + t * d; }, [d](double) { return d; }, 0.0, 1.0};
}

Curve Curve::line(Point2 origin, Vec2 direction, double t0, double t1) {
  return {"line", [origin, direction](double t) { return origin + t * direction; },
          [direction](double) { return direction; }, t0, t1};
}

Curve Curve::circle(Point2 center, double radius, double t0, double t1) {
  return {"circle",
          [center, radius](double t) { return center + radius * Vec2{std::cos(t), std::sin(t)}; },
          [radius](double t) { return radius * Vec2{-std::sin(t), std::cos(t)}; }, t0, t1};
}

Curve Curve::constant(Point2 p) {
  return {"constant", [p](double) { return p; }, [](double) { return Vec2{}; }, 0.0, 1.0};
}

Curve Curve::point(Point2 p) {
  Curve r = constant(p);
  r.name = "point";
  r.t1 = 0.0;
  return r;
}

Curve Curve::polyline(std::vector<Point2> points) {
  if (points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  const auto pieces = static_cast<double>(points.size() - 1);
  auto locate = [pieces](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * pieces;
    const auto n = static_cast<std::size_t>(std::min(std::floor(s), pieces - 1.0));
    return std::pair{n, s - static_cast<double>(n)};
  };
  auto c = [points, locate](double t) {
    const auto [n, s] = locate(t);
    return points[n] + s * (points[n + 1] - points[n]);
  };
  auto c_dot = [points, locate, pieces](double t) {
    const std::size_t n = locate(t).first;
    return pieces * (points[n + 1] - points[n]);
  };
  std::vector<double> breaks;
  for (std::size_t n = 1; n + 1 < points.size(); ++n) breaks.push_back(static_cast<double>(n) / pieces);
  return {"polyline", std::move(c), std::move(c_dot), 0.0, 1.0, std::move(breaks)};
}

// ─── Transport ──────────────────────────────────────────────────────────────

namespace {

// RK4 over one smooth piece [a, b]; appends samples after the first and
// updates the state in place.
void integrate_piece(const Connection2D& conn, const Curve& curve, double a, double b, int steps, State& s,
                     TransportResult& out) {
  // Velocities are taken from inside the piece so a jump at either end is not seen.
  const double margin = 1e-9 * std::abs(b - a);
  const double lo = std::min(a, b) + margin, hi = std::max(a, b) - margin;
  Curve piece = curve;
  piece.c_dot = [&curve, lo, hi](double t) { return curve.velocity(std::clamp(t, lo, hi)); };

  const double h = (b - a) / steps;
  Mat2 a_start = transport_generator(conn, piece, a);
  for (int n = 0; n < steps; ++n) {
    const double t = a + n * h;
    const double t_next = n + 1 == steps ? b : a + (n + 1) * h;
    const Mat2 a_mid = transport_generator(conn, piece, t + 0.5 * h);
    const Mat2 a_end = transport_generator(conn, piece, t_next);
    const State k1 = rate(a_start, s);
    const State k2 = rate(a_mid, axpy(s, 0.5 * h, k1));
    const State k3 = rate(a_mid, axpy(s, 0.5 * h, k2));
    const State k4 = rate(a_end, axpy(s, h, k3));
    for (std::size_t m = 0; m < s.size(); ++m) s[m] += (h / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    for (const Vec2& v : s)
      if (!v.is_finite()) throw NonFiniteError("parallel transport produced non-finite values");
    out.ts.push_back(t_next);
    out.vectors.push_back(s[0]);
    a_start = a_end;
  }
}

}  // namespace

TransportResult parallel_transport(const Connection2D& conn, const Curve& curve, Vec2 x0, int steps) {
  if (steps < 1) throw std::invalid_argument("parallel transport needs at least one step");
  if (!x0.is_finite()) throw NonFiniteError("initial vector is not finite");

  TransportResult result;
  State s{x0, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
  result.ts.push_back(curve.t0);
  result.vectors.push_back(x0);
  if (curve.is_degenerate()) {
    (void)conn(curve.start());
    return result;
  }

  std::vector<double> knots{curve.t0};
  for (double b : curve.breaks)
    if ((b - curve.t0) * (curve.t1 - b) > 0.0) knots.push_back(b);
  if (curve.t1 < curve.t0) std::sort(knots.begin() + 1, knots.end(), std::greater<>());
  else std::sort(knots.begin() + 1, knots.end());
  knots.push_back(curve.t1);

  const double length = curve.t1 - curve.t0;
  result.ts.reserve(static_cast<std::size_t>(steps) + knots.size());
  result.vectors.reserve(static_cast<std::size_t>(steps) + knots.size());
  for (std::size_t n = 0; n + 1 < knots.size(); ++n) {
    const double share = (knots[n + 1] - knots[n]) / length;
    const int piece_steps = std::max(1, static_cast<int>(std::lround(share * steps)));
    integrate_piece(conn, curve, knots[n], knots[n + 1], piece_steps, s, result);
  }
  result.matrix = Mat2::from_columns(s[1], s[2]);
  return result;
}

Mat2 transport_matrix(const Connection2D& conn, const Curve& curve, int steps) {
  return parallel_transport(conn, curve, Vec2{}, steps).matrix;
}

Mat2 holonomy(const Connection2D& conn, const Curve& loop, int steps, double closure_tolerance) {
  const Vec2 gap = loop.end() - loop.start();
  if (!(std::max(std::abs(gap.x), std::abs(gap.y)) <= closure_tolerance))
    throw std::invalid_argument("holonomy needs a closed loop; endpoints of '" + loop.name + "' differ");
  return transport_matrix(conn, loop, steps);
}

// ─── Closed forms ───────────────────────────────────────────────────────────

Vec2 closed_form_euclidean(const ScalarField& f, const Curve& curve, double r0, double phi0, double t) {
  if (!(r0 > 0.0)) throw std::invalid_argument("closed-form amplitude r0 must be positive");
  const double angle = f(curve(t)) + phi0;
  return r0 * Vec2{std::cos(angle), -std::sin(angle)};
}

Vec2 closed_form_hyperbolic(const ScalarField& f, const Curve& curve, double r0, double phi0, double t) {
  if (!(r0 > 0.0)) throw std::invalid_argument("closed-form amplitude r0 must be positive");
  const Point2 p = curve(t);
  if (!(p.u2 > 0.0)) throw DomainError("curve '" + curve.name + "' leaves the upper half-plane");
  const double angle = f(p) + phi0;
  return p.u2 * r0 * Vec2{std::cos(angle), std::sin(angle)};
}

PolarData euclidean_polar_data(const ScalarField& f, const Curve& curve, Vec2 x0) {
  return {norm(x0), std::atan2(-x0.y, x0.x) - f(curve.start())};
}

PolarData hyperbolic_polar_data(const ScalarField& f, const Curve& curve, Vec2 x0) {
  const Point2 p = curve.start();
  if (!(p.u2 > 0.0)) throw DomainError("curve '" + curve.name + "' starts outside the upper half-plane");
  return {norm(x0) / p.u2, std::atan2(x0.y, x0.x) - f(p)};
}

}  // namespace berwald

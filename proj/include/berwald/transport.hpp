#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "berwald/connection.hpp"
#include "berwald/geometry.hpp"

namespace berwald {

inline constexpr int kDefaultSteps = 1000;

/// Parametrized path c: [t0, t1] -> surface.
struct Curve {
  std::string name;
  std::function<Point2(double)> c;
  /// Optional analytic velocity; central differences (h = 1e-6) otherwise.
  std::function<Vec2(double)> c_dot;
  double t0 = 0.0;
  double t1 = 1.0;
  /// Interior parameters where c_dot may jump; transport integrates each
  /// smooth piece separately.
  std::vector<double> breaks = {};

  Point2 operator()(double t) const { return c(t); }
  Vec2 velocity(double t) const;
  Point2 start() const { return c(t0); }
  Point2 end() const { return c(t1); }
  bool is_degenerate() const { return t1 == t0; }

  /// Same path on the sub-interval [a, b].
  Curve restricted(double a, double b) const;

  /// c(t) = from + t (to - from), t in [0, 1].
  static Curve segment(Point2 from, Point2 to);
  /// c(t) = origin + t direction, t in [t0, t1].
  static Curve line(Point2 origin, Vec2 direction, double t0, double t1);
  /// c(t) = center + radius (cos t, sin t), t in [t0, t1].
  static Curve circle(Point2 center, double radius, double t0, double t1);
  /// c(t) = p on [0, 1].
  static Curve constant(Point2 p);
  /// The zero-length curve t0 = t1 = 0 at p.
  static Curve point(Point2 p);
  /// Piecewise-linear path through the points, t in [0, 1] with equal
  /// parameter length per segment.
  static Curve polyline(std::vector<Point2> points);
};

/// Samples of a transported vector; matrix maps X(t0) to X(t1).
struct TransportResult {
  std::vector<double> ts;
  std::vector<Vec2> vectors;
  Mat2 matrix = Mat2::identity();
};

/// Classical RK4 for (X^k)' = −(c^i)' X^j Γ^k_ij∘c with `steps` uniform steps
/// (split across smooth pieces in proportion to their parameter length).
/// A degenerate curve yields a single sample. Throws DomainError when the
/// curve leaves the connection's domain and NonFiniteError on non-finite data.
TransportResult parallel_transport(const Connection2D& conn, const Curve& curve, Vec2 x0,
                                   int steps = kDefaultSteps);

/// Columns are the transports of (1,0) and (0,1).
Mat2 transport_matrix(const Connection2D& conn, const Curve& curve, int steps = kDefaultSteps);

/// Transport matrix around a closed loop; throws std::invalid_argument when
/// the endpoints differ by more than `closure_tolerance`.
Mat2 holonomy(const Connection2D& conn, const Curve& loop, int steps = kDefaultSteps,
              double closure_tolerance = 1e-12);

/// Euclidean parallel field r0 (cos(φ + φ0), −sin(φ + φ0)), φ = f∘c.
Vec2 closed_form_euclidean(const ScalarField& f, const Curve& curve, double r0, double phi0, double t);

/// Hyperbolic parallel field c^2(t) r0 (cos(φ + φ0), sin(φ + φ0)), φ = f∘c.
Vec2 closed_form_hyperbolic(const ScalarField& f, const Curve& curve, double r0, double phi0, double t);

/// Amplitude and phase offset of a closed-form field through X0 at c(t0).
struct PolarData {
  double r0 = 1.0;
  double phi0 = 0.0;
};

PolarData euclidean_polar_data(const ScalarField& f, const Curve& curve, Vec2 x0);
PolarData hyperbolic_polar_data(const ScalarField& f, const Curve& curve, Vec2 x0);

}  // namespace berwald

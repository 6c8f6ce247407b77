#pragma once

#include <array>
#include <vector>

#include "berwald/connection.hpp"
#include "berwald/transport.hpp"

namespace berwald {

/// Level set |w + X0| + |w| + |w − X0| = level with foci −X0, 0, X0.
///
/// The origin must be interior (2|X0| < level); the curve is then smooth and
/// strictly convex. X0 = 0 degenerates to the circle of radius level/3.
class TrifocalEllipse {
 public:
  TrifocalEllipse(Vec2 focal, double level);

  Vec2 focal() const { return focal_; }
  double level() const { return level_; }

  /// Sum of the three focal distances minus the level: < 0 inside, 0 on the curve.
  double membership(Vec2 v) const;
  /// Minkowski functional: the t > 0 with membership(v / t) = 0; zero at the origin.
  double gauge(Vec2 v) const;
  /// Boundary point in direction (cos θ, sin θ).
  Vec2 boundary_point(double theta) const;
  /// n boundary points at uniform angles, closed by repeating the first.
  std::vector<Vec2> boundary(int n) const;

 private:
  Vec2 focal_;
  double level_;
};

inline double membership(const TrifocalEllipse& e, Vec2 v) { return e.membership(v); }
inline double gauge(const TrifocalEllipse& e, Vec2 v) { return e.gauge(v); }

/// Max |Q(w) − 1| of the least-squares centered ellipse Q(w) = wᵀ A w = 1
/// through `samples` boundary points. Zero for Riemannian (quadratic) indicatrices.
double ellipse_fit_residual(const TrifocalEllipse& e, int samples = 360);

/// Finsler function obtained by parallel translation of one indicatrix.
class FinslerStructure {
 public:
  /// Throws DomainError when the base point is outside the connection domain
  /// and std::invalid_argument when the holonomy on a probe loop around the
  /// base point differs from the identity by more than holonomy_tolerance.
  FinslerStructure(Point2 base_point, TrifocalEllipse base_indicatrix, Connection2D connection,
                   int steps = kDefaultSteps, double holonomy_tolerance = 1e-7);

  Point2 base_point() const { return base_point_; }
  const TrifocalEllipse& base_indicatrix() const { return base_indicatrix_; }
  const Connection2D& connection() const { return connection_; }
  int steps() const { return steps_; }
  /// Identity-distance of the probe-loop holonomy measured at construction.
  double probe_holonomy_defect() const { return probe_defect_; }

  /// Straight coordinate segment from the base point to p.
  Curve canonical_path(Point2 p) const;

 private:
  Point2 base_point_;
  TrifocalEllipse base_indicatrix_;
  Connection2D connection_;
  int steps_;
  double probe_defect_ = 0.0;
};

/// Image of the base indicatrix under the transport map to `at`.
struct TranslatedIndicatrix {
  Point2 at;
  Mat2 transport = Mat2::identity();
  TrifocalEllipse base;

  /// −M X0, 0, M X0.
  std::array<Vec2, 3> foci() const;
  std::vector<Vec2> boundary(int n) const;
  /// gauge(base, M⁻¹ v).
  double gauge(Vec2 v) const;
};

/// Throws std::invalid_argument when the path does not run from the base point to p.
TranslatedIndicatrix indicatrix_at(const FinslerStructure& fs, Point2 p, const Curve& path);
TranslatedIndicatrix indicatrix_at(const FinslerStructure& fs, Point2 p);

/// F(p, v) = gauge(base, M⁻¹ v) along the canonical path (or the given one).
double finsler_norm(const FinslerStructure& fs, Point2 p, Vec2 v);
double finsler_norm(const FinslerStructure& fs, Point2 p, Vec2 v, const Curve& path);

struct CompatibilityReport {
  std::vector<double> ts;
  std::vector<double> values;
  double reference = 0.0;
  double max_deviation = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
};

/// Transports X0 along the curve (with fs.connection(), or `transport_with`
/// when given) and compares F(c(t), X(t)) against F(c(t0), X0) at `samples`
/// evenly spaced integrator nodes.
CompatibilityReport compatibility_check(const FinslerStructure& fs, const Curve& curve, Vec2 x0, int samples,
                                        const Connection2D* transport_with = nullptr,
                                        double tolerance = 1e-6);

/// Averaged Riemannian metric γ̂_p = ∫ g_ij μ over the indicatrix at p, by the
/// trapezoid rule on `quad_points` uniform angles. g is the fiber Hessian of
/// E = F²/2 (second central differences, step 1e-4 |y|). Throws
/// ConvexityError when g fails to be positive definite at a node.
Mat2 averaged_metric(const TranslatedIndicatrix& indicatrix, int quad_points = 720);
Mat2 averaged_metric(const FinslerStructure& fs, Point2 p, int quad_points = 720);

}  // namespace berwald

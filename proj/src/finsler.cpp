#include "berwald/finsler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace berwald {

// ─── Trifocal ellipse ───────────────────────────────────────────────────────

TrifocalEllipse::TrifocalEllipse(Vec2 focal, double level) : focal_(focal), level_(level) {
  if (!focal.is_finite() || !std::isfinite(level))
    throw std::invalid_argument("trifocal ellipse data must be finite");
  if (!(2.0 * norm(focal) < level))
    throw std::invalid_argument("trifocal ellipse level must exceed 2|X0| so that the origin is interior");
}

double TrifocalEllipse::membership(Vec2 v) const {
  return norm(v + focal_) + norm(v) + norm(v - focal_) - level_;
}

double TrifocalEllipse::gauge(Vec2 v) const {
  if (!v.is_finite()) throw NonFiniteError("gauge of a non-finite vector");
  const double length = norm(v);
  if (length == 0.0) return 0.0;

  // membership(v / t) decreases in t and changes sign exactly once.
  // At t = |v| / level the scaled vector has length level, so it is outside.
  double lo = length / level_;
  double hi = 2.0 * lo;
  while (membership(v / hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (membership(v / mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Vec2 TrifocalEllipse::boundary_point(double theta) const {
  const Vec2 d{std::cos(theta), std::sin(theta)};
  return d / gauge(d);
}

std::vector<Vec2> TrifocalEllipse::boundary(int n) const {
  if (n < 3) throw std::invalid_argument("boundary polyline needs at least three points");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) pts.push_back(boundary_point(2.0 * std::numbers::pi * k / n));
  pts.push_back(pts.front());
  return pts;
}

double ellipse_fit_residual(const TrifocalEllipse& e, int samples) {
  if (samples < 3) throw std::invalid_argument("ellipse fit needs at least three samples");
  // Least squares for a x² + 2b xy + c y² = 1 via the 3x3 normal equations.
  std::vector<std::array<double, 3>> rows;
  double ata[3][3] = {};
  double atb[3] = {};
  for (int k = 0; k < samples; ++k) {
    const Vec2 w = e.boundary_point(2.0 * std::numbers::pi * k / samples);
    const std::array<double, 3> row{w.x * w.x, 2.0 * w.x * w.y, w.y * w.y};
    rows.push_back(row);
    for (int i = 0; i < 3; ++i) {
      atb[i] += row[i];
      for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
    }
  }
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(ata);
  std::array<double, 3> coef{};
  for (int c = 0; c < 3; ++c) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = j == c ? atb[i] : ata[i][j];
    coef[c] = det3(m) / d;
  }
  double residual = 0.0;
  for (const auto& row : rows)
    residual = std::max(residual, std::abs(coef[0] * row[0] + coef[1] * row[1] + coef[2] * row[2] - 1.0));
  return residual;
}

// ─── Finsler structure ──────────────────────────────────────────────────────

namespace {

Curve probe_loop(const Connection2D& conn, Point2 center) {
  double radius = 0.5;
  for (int attempt = 0; attempt < 20; ++attempt, radius *= 0.5) {
    const Curve loop = Curve::circle(center, radius, 0.0, 2.0 * std::numbers::pi);
    bool inside = true;
    for (int k = 0; k < 64 && inside; ++k) inside = conn.contains(loop(2.0 * std::numbers::pi * k / 64));
    if (inside) return loop;
  }
  throw DomainError("no probe loop around the base point fits into the domain");
}

}  // namespace

FinslerStructure::FinslerStructure(Point2 base_point, TrifocalEllipse base_indicatrix, Connection2D connection,
                                   int steps, double holonomy_tolerance)
    : base_point_(base_point),
      base_indicatrix_(std::move(base_indicatrix)),
      connection_(std::move(connection)),
      steps_(steps) {
  if (!connection_.contains(base_point_)) throw DomainError("base point is outside the connection domain");
  if (steps_ < 1) throw std::invalid_argument("Finsler structure needs at least one integrator step");
  const Mat2 hol = holonomy(connection_, probe_loop(connection_, base_point_), steps_);
  probe_defect_ = max_abs_diff(hol, Mat2::identity());
  if (!(probe_defect_ <= holonomy_tolerance))
    throw std::invalid_argument("connection '" + connection_.name() +
                                "' has non-trivial holonomy; translated indicatrices would depend on the path");
}

Curve FinslerStructure::canonical_path(Point2 p) const {
  if (p == base_point_) return Curve::constant(p);
  return Curve::segment(base_point_, p);
}

std::array<Vec2, 3> TranslatedIndicatrix::foci() const {
  const Vec2 x = transport * base.focal();
  return {-x, Vec2{}, x};
}

std::vector<Vec2> TranslatedIndicatrix::boundary(int n) const {
  std::vector<Vec2> pts = base.boundary(n);
  for (Vec2& w : pts) w = transport * w;
  return pts;
}

double TranslatedIndicatrix::gauge(Vec2 v) const { return base.gauge(transport.inverse(1e-300) * v); }

TranslatedIndicatrix indicatrix_at(const FinslerStructure& fs, Point2 p, const Curve& path) {
  constexpr double kEndpointTolerance = 1e-9;
  if (norm(path.start() - fs.base_point()) > kEndpointTolerance || norm(path.end() - p) > kEndpointTolerance)
    throw std::invalid_argument("path must run from the base point to the evaluation point");
  const Mat2 m = transport_matrix(fs.connection(), path, fs.steps());
  if (!(std::abs(m.det()) > 1e-300)) throw SingularMetricError("transport matrix is singular");
  return {p, m, fs.base_indicatrix()};
}

TranslatedIndicatrix indicatrix_at(const FinslerStructure& fs, Point2 p) {
  return indicatrix_at(fs, p, fs.canonical_path(p));
}

double finsler_norm(const FinslerStructure& fs, Point2 p, Vec2 v) { return indicatrix_at(fs, p).gauge(v); }

double finsler_norm(const FinslerStructure& fs, Point2 p, Vec2 v, const Curve& path) {
  return indicatrix_at(fs, p, path).gauge(v);
}

CompatibilityReport compatibility_check(const FinslerStructure& fs, const Curve& curve, Vec2 x0, int samples,
                                        const Connection2D* transport_with, double tolerance) {
  if (samples < 1) throw std::invalid_argument("compatibility check needs at least one sample");
  const Connection2D& conn = transport_with ? *transport_with : fs.connection();
  const TransportResult transported = parallel_transport(conn, curve, x0, fs.steps());

  CompatibilityReport report;
  report.tolerance = tolerance;
  report.reference = finsler_norm(fs, curve.start(), x0);
  const std::size_t last = transported.ts.size() - 1;
  const int count = last == 0 ? 1 : samples;
  for (int s = 0; s < count; ++s) {
    const std::size_t n = count == 1 ? 0 : (last * static_cast<std::size_t>(s)) / static_cast<std::size_t>(count - 1);
    const double t = transported.ts[n];
    const double value = finsler_norm(fs, curve(t), transported.vectors[n]);
    report.ts.push_back(t);
    report.values.push_back(value);
    report.max_deviation = std::max(report.max_deviation, std::abs(value - report.reference));
  }
  report.pass = report.max_deviation <= tolerance;
  return report;
}

// ─── Averaged metric ────────────────────────────────────────────────────────

Mat2 averaged_metric(const TranslatedIndicatrix& indicatrix, int quad_points) {
  if (quad_points < 3) throw std::invalid_argument("averaged metric needs at least three quadrature nodes");
  auto energy = [&indicatrix](Vec2 y) {
    const double f = indicatrix.gauge(y);
    return 0.5 * f * f;
  };

  Mat2 total;
  const double dtheta = 2.0 * std::numbers::pi / quad_points;
  for (int n = 0; n < quad_points; ++n) {
    const double theta = n * dtheta;
    const Vec2 direction{std::cos(theta), std::sin(theta)};
    const double radius = 1.0 / indicatrix.gauge(direction);
    const Vec2 y = radius * direction;

    const double h = 1e-4 * norm(y);
    const double e0 = energy(y);
    Mat2 g;
    for (int i = 0; i < 2; ++i) {
      const Vec2 ei = axis(i, h);
      g(i, i) = (energy(y + ei) - 2.0 * e0 + energy(y - ei)) / (h * h);
    }
    const Vec2 e1 = axis(0, h);
    const Vec2 e2 = axis(1, h);
    g(0, 1) = g(1, 0) =
        (energy(y + e1 + e2) - energy(y + e1 - e2) - energy(y - e1 + e2) + energy(y - e1 - e2)) / (4.0 * h * h);
    if (!(g(0, 0) > 0.0 && g.det() > 0.0))
      throw ConvexityError("fiber Hessian is not positive definite on the indicatrix");

    // Induced volume μ = √det g (y¹ dy² − y² dy¹) / F; along y(θ) = r(θ)(cos θ, sin θ)
    // on F = 1 this is √det g r² dθ.
    total += g * (std::sqrt(g.det()) * radius * radius * dtheta);
  }
  return total;
}

Mat2 averaged_metric(const FinslerStructure& fs, Point2 p, int quad_points) {
  return averaged_metric(indicatrix_at(fs, p), quad_points);
}

}  // namespace berwald

#include "berwald/surfaces.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "berwald/differentiate.hpp"

namespace berwald {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SurfaceKind kind_for(Vec2 periods) {
  const bool p1 = periods.x > 0.0;
  const bool p2 = periods.y > 0.0;
  if (p1 && p2) return SurfaceKind::torus;
  if (p1 || p2) return SurfaceKind::cylinder;
  return SurfaceKind::plane;
}

// Sample coordinates along one axis: the fundamental period when periodic, [-1, 1] otherwise.
std::vector<double> axis_samples(double period, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / count;
    out.push_back(period > 0.0 ? s * period : -1.0 + 2.0 * s);
  }
  return out;
}

std::vector<double> parse_arguments(std::string_view spec, std::string_view head) {
  const std::string body(spec.substr(head.size()));
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw std::invalid_argument("malformed surface arguments in '" + std::string(spec) + "'");
  std::vector<double> args;
  std::istringstream in(body.substr(1, body.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("surface argument '" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("surface argument '" + item + "' is not a number");
    args.push_back(value);
  }
  return args;
}

}  // namespace

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::plane: return "plane";
    case SurfaceKind::cylinder: return "cylinder";
    case SurfaceKind::torus: return "torus";
  }
  return "unknown";
}

// ─── Conformal factor ───────────────────────────────────────────────────────

double TrigConformalFactor::value(Point2 p) const {
  return a * std::sin(k1 * p.u1 + phase1) * std::sin(k2 * p.u2 + phase2);
}

Vec2 TrigConformalFactor::gradient(Point2 p) const {
  const double s1 = std::sin(k1 * p.u1 + phase1), c1 = std::cos(k1 * p.u1 + phase1);
  const double s2 = std::sin(k2 * p.u2 + phase2), c2 = std::cos(k2 * p.u2 + phase2);
  return {a * k1 * c1 * s2, a * k2 * s1 * c2};
}

double TrigConformalFactor::laplacian(Point2 p) const { return -(k1 * k1 + k2 * k2) * value(p); }

ScalarField TrigConformalFactor::field() const {
  std::ostringstream name;
  name << a << "*sin(" << k1 << "*u1+" << phase1 << ")*sin(" << k2 << "*u2+" << phase2 << ")";
  const TrigConformalFactor self = *this;
  return {name.str(), [self](Point2 p) { return self.value(p); }, [self](Point2 p) { return self.gradient(p); }};
}

// ─── Catalogue ──────────────────────────────────────────────────────────────

PeriodicSurface euclidean_plane() {
  return {"euclidean", SurfaceKind::plane, euclidean_metric(), Vec2{},
          ScalarField{"0", [](Point2) { return 0.0; }, {}}};
}

PeriodicSurface hyperbolic_plane() {
  return {"hyperbolic", SurfaceKind::plane, hyperbolic_metric(), Vec2{},
          ScalarField{"-1", [](Point2) { return -1.0; }, {}}};
}

PeriodicSurface flat_torus() {
  PeriodicSurface s = euclidean_plane();
  s.name = "flat-torus";
  return with_periods(std::move(s), Vec2{kTwoPi, kTwoPi});
}

PeriodicSurface conformal_torus(const TrigConformalFactor& sigma) {
  if (sigma.k1 == 0.0 || sigma.k2 == 0.0)
    throw std::invalid_argument("conformal torus needs nonzero wave numbers");
  std::ostringstream name;
  name << "conformal-torus(" << sigma.a << "," << sigma.k1 << "," << sigma.k2;
  if (sigma.phase1 != 0.0 || sigma.phase2 != 0.0) name << "," << sigma.phase1 << "," << sigma.phase2;
  name << ")";
  auto kappa = [sigma](Point2 p) { return -std::exp(-2.0 * sigma.value(p)) * sigma.laplacian(p); };
  return {name.str(), SurfaceKind::torus, conformal_metric(sigma.field()),
          Vec2{kTwoPi / std::abs(sigma.k1), kTwoPi / std::abs(sigma.k2)},
          ScalarField{"-exp(-2 sigma) lap sigma", std::move(kappa), {}}};
}

PeriodicSurface make_surface(std::string_view spec) {
  if (spec == "euclidean") return euclidean_plane();
  if (spec == "hyperbolic") return hyperbolic_plane();
  if (spec == "flat-torus") return flat_torus();
  constexpr std::string_view conformal = "conformal-torus";
  if (spec.starts_with(conformal)) {
    const std::vector<double> args = parse_arguments(spec, conformal);
    if (args.size() != 3 && args.size() != 5)
      throw std::invalid_argument("conformal-torus takes (a, k1, k2) or (a, k1, k2, phase1, phase2)");
    TrigConformalFactor sigma{args[0], args[1], args[2], 0.0, 0.0};
    if (args.size() == 5) {
      sigma.phase1 = args[3];
      sigma.phase2 = args[4];
    }
    return conformal_torus(sigma);
  }
  throw std::invalid_argument("unknown surface '" + std::string(spec) + "'");
}

PeriodicSurface with_periods(PeriodicSurface surface, Vec2 periods) {
  if (periods.x < 0.0 || periods.y < 0.0) throw std::invalid_argument("periods must be non-negative");
  surface.periods = periods;
  surface.kind = kind_for(periods);
  return surface;
}

// ─── Divergence representation by integration ──────────────────────────────

CurvatureDensity curvature_density(const PeriodicSurface& surface) {
  const Metric2D metric = surface.metric;
  return {metric.domain(), [metric](Point2 p) { return metric.sqrt_det(p); },
          [metric](Point2 p) { return gauss_curvature(metric, p); }};
}

double solve_x2(const CurvatureDensity& density, const X2Data& data, Point2 p) {
  if (data.quad_steps < 2 || data.quad_steps % 2 != 0)
    throw std::invalid_argument("Simpson quadrature needs an even number (>= 2) of subintervals");
  if (!density.domain(p) || !density.domain(Point2{p.u1, 0.0}))
    throw DomainError("integration segment {u1} x [0, u2] leaves the domain");

  auto flux = [&](Point2 q) { return density.sqrt_det(q) * data.x1(q); };
  auto integrand = [&](double t) {
    const Point2 q{p.u1, t};
    return density.kappa(q) * density.sqrt_det(q) + numeric::partial(flux, q, 0, density.domain);
  };

  const int n = data.quad_steps;
  const double h = p.u2 / n;
  double sum = integrand(0.0) + integrand(p.u2);
  for (int k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * h);
  const double integral = sum * h / 3.0;

  return -(integral + data.c(p.u1) + data.c0) / density.sqrt_det(p);
}

double solve_x2(const PeriodicSurface& surface, const X2Data& data, Point2 p) {
  return solve_x2(curvature_density(surface), data, p);
}

VectorField divergence_field(const PeriodicSurface& surface, const X2Data& data) {
  const CurvatureDensity density = curvature_density(surface);
  return {"X[" + surface.name + "]",
          [density, data](Point2 p) { return Vec2{data.x1(p), solve_x2(density, data, p)}; }};
}

PeriodicityReport check_periodicity(const PeriodicSurface& surface, const VectorField& field,
                                    int samples_per_axis, double tolerance) {
  if (surface.kind == SurfaceKind::plane)
    throw std::invalid_argument("surface '" + surface.name + "' declares no periodic direction");
  PeriodicityReport report;
  report.tolerance = tolerance;
  for (double u1 : axis_samples(surface.periods.x, samples_per_axis))
    for (double u2 : axis_samples(surface.periods.y, samples_per_axis)) {
      const Point2 p{u1, u2};
      const Vec2 base = field(p);
      for (int k = 0; k < 2; ++k) {
        if (!(surface.periods[k] > 0.0)) continue;
        const Vec2 diff = field(p + axis(k, surface.periods[k])) - base;
        report.max_difference.x = std::max(report.max_difference.x, std::abs(diff.x));
        report.max_difference.y = std::max(report.max_difference.y, std::abs(diff.y));
      }
    }
  report.pass = std::max(report.max_difference.x, report.max_difference.y) <= tolerance;
  return report;
}

double metric_periodicity_defect(const PeriodicSurface& surface, int samples_per_axis) {
  double defect = 0.0;
  for (double u1 : axis_samples(surface.periods.x, samples_per_axis))
    for (double u2 : axis_samples(surface.periods.y, samples_per_axis)) {
      const Point2 p{u1, u2};
      for (int k = 0; k < 2; ++k) {
        if (!(surface.periods[k] > 0.0)) continue;
        const Point2 q = p + axis(k, surface.periods[k]);
        defect = std::max(defect, std::abs(surface.metric(q).det() - surface.metric(p).det()));
        defect = std::max(defect, std::abs(gauss_curvature(surface.metric, q) - gauss_curvature(surface.metric, p)));
      }
    }
  return defect;
}

double gauss_bonnet_integral(const PeriodicSurface& surface, int n1, int n2) {
  if (surface.kind != SurfaceKind::torus)
    throw std::invalid_argument("Gauss-Bonnet integral needs a torus; '" + surface.name + "' is a " +
                                std::string(to_string(surface.kind)));
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("Gauss-Bonnet grid must be non-empty");
  const double h1 = surface.periods.x / n1;
  const double h2 = surface.periods.y / n2;
  double sum = 0.0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      const Point2 p{i * h1, j * h2};
      sum += gauss_curvature(surface.metric, p) * surface.metric.sqrt_det(p);
    }
  return sum * h1 * h2;
}

}  // namespace berwald

#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "berwald/geometry.hpp"

namespace berwald {

enum class SurfaceKind { plane, cylinder, torus };

std::string_view to_string(SurfaceKind kind);

/// Metric on R², R×S¹ or S¹×S¹ given on a fundamental domain; a zero period
/// means the direction is not periodic.
struct PeriodicSurface {
  std::string name;
  SurfaceKind kind = SurfaceKind::plane;
  Metric2D metric;
  Vec2 periods;
  /// Closed-form Gauss curvature used to cross-check the numeric one.
  ScalarField kappa_oracle;
};

/// σ = a sin(k1 u¹ + phase1) sin(k2 u² + phase2).
struct TrigConformalFactor {
  double a = 0.1;
  double k1 = 1.0;
  double k2 = 1.0;
  double phase1 = 0.0;
  double phase2 = 0.0;

  double value(Point2 p) const;
  Vec2 gradient(Point2 p) const;
  double laplacian(Point2 p) const;
  ScalarField field() const;
};

PeriodicSurface euclidean_plane();
PeriodicSurface hyperbolic_plane();
/// Euclidean metric with periods (2π, 2π).
PeriodicSurface flat_torus();
/// γ = e^{2σ} δ with periods (2π/|k1|, 2π/|k2|); κ* = −e^{−2σ} Δσ.
PeriodicSurface conformal_torus(const TrigConformalFactor& sigma);

/// Catalogue lookup: "euclidean", "hyperbolic", "flat-torus",
/// "conformal-torus(a, k1, k2)" or "conformal-torus(a, k1, k2, phase1, phase2)".
/// Throws std::invalid_argument for unknown names or malformed arguments.
PeriodicSurface make_surface(std::string_view spec);

/// Same metric with different declared periods (the kind follows the periods).
PeriodicSurface with_periods(PeriodicSurface surface, Vec2 periods);

/// √det γ and κ* along with their common domain; the input of solve_x2.
struct CurvatureDensity {
  Domain domain;
  std::function<double(Point2)> sqrt_det;
  std::function<double(Point2)> kappa;
};

/// Numeric κ* and √det γ of the surface metric.
CurvatureDensity curvature_density(const PeriodicSurface& surface);

/// Free data of the integral formula for X².
struct X2Data {
  ScalarField x1 = zero_potential();
  std::function<double(double)> c = [](double) { return 0.0; };
  double c0 = 0.0;
  int quad_steps = 512;
};

/// X²(p) = −(1/√det γ)(∫₀^{u²} [κ*√det γ + ∂_1(√det γ X¹)](u¹, t) dt + c(u¹) + c₀)
/// by composite Simpson with data.quad_steps subintervals (even, ≥ 2).
double solve_x2(const CurvatureDensity& density, const X2Data& data, Point2 p);
double solve_x2(const PeriodicSurface& surface, const X2Data& data, Point2 p);

/// The field (X¹, X²) with div*X = −κ*.
VectorField divergence_field(const PeriodicSurface& surface, const X2Data& data);

struct PeriodicityReport {
  Vec2 max_difference;
  double tolerance = 1e-8;
  bool pass = false;
};

/// Max over a grid of |X(p + period) − X(p)| per component, for each periodic
/// direction. Throws std::invalid_argument when no direction is periodic.
PeriodicityReport check_periodicity(const PeriodicSurface& surface, const VectorField& field,
                                    int samples_per_axis = 8, double tolerance = 1e-8);

/// Max over a grid of |det γ(p + period) − det γ(p)| and |κ*(p + period) − κ*(p)|.
double metric_periodicity_defect(const PeriodicSurface& surface, int samples_per_axis = 8);

/// ∫∫ κ* √det γ over one fundamental domain by the periodic trapezoid rule.
/// Throws std::invalid_argument unless the surface is a torus.
double gauss_bonnet_integral(const PeriodicSurface& surface, int n1, int n2);

}  // namespace berwald

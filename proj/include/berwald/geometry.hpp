#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "berwald/types.hpp"

namespace berwald {

/// Scalar function on the surface, optionally with an analytic gradient.
struct ScalarField {
  std::string name;
  std::function<double(Point2)> eval;
  std::function<Vec2(Point2)> grad;

  double operator()(Point2 p) const { return eval(p); }
  bool has_gradient() const { return static_cast<bool>(grad); }
  /// Analytic gradient when supplied, central differences otherwise.
  Vec2 gradient(Point2 p, const Domain& domain) const;
};

/// Contravariant components (X^1, X^2).
struct VectorField {
  std::string name;
  std::function<Vec2(Point2)> comps;

  Vec2 operator()(Point2 p) const { return comps(p); }
};

/// Covariant components (ρ_1, ρ_2).
struct OneForm {
  std::string name;
  std::function<Vec2(Point2)> comps;

  Vec2 operator()(Point2 p) const { return comps(p); }
};

/// Smooth field of symmetric positive-definite 2x2 matrices γ_ij(p).
class Metric2D {
 public:
  using MatrixFn = std::function<Mat2(Point2)>;
  /// Returns {∂γ/∂u^1, ∂γ/∂u^2}.
  using PartialsFn = std::function<std::array<Mat2, 2>(Point2)>;

  Metric2D(std::string name, MatrixFn g, Domain domain = whole_plane(), PartialsFn partials = {});

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  bool contains(Point2 p) const { return p.is_finite() && domain_(p); }
  bool has_analytic_partials() const { return static_cast<bool>(partials_); }

  /// γ(p); throws DomainError outside the domain.
  Mat2 operator()(Point2 p) const;
  /// γ^{-1}(p); throws SingularMetricError when det γ < 1e-14.
  Mat2 inverse(Point2 p) const;
  double sqrt_det(Point2 p) const;
  std::array<Mat2, 2> partials(Point2 p) const;

  /// γ_p(v, w).
  double inner(Point2 p, const Vec2& v, const Vec2& w) const { return dot(v, (*this)(p) * w); }

 private:
  void require_domain(Point2 p) const;

  std::string name_;
  MatrixFn g_;
  Domain domain_;
  PartialsFn partials_;
};

Metric2D euclidean_metric();
/// Upper half-plane u^2 > 0 with γ = δ / (u^2)^2.
Metric2D hyperbolic_metric();
/// γ = e^{2σ} δ; analytic partials are used when σ carries a gradient.
Metric2D conformal_metric(const ScalarField& sigma, Domain domain = whole_plane());

/// Levi-Civita coefficients Γ*^k_ij = ½ γ^{kl}(∂_i γ_jl + ∂_j γ_il − ∂_l γ_ij).
Christoffel christoffel_lc(const Metric2D& metric, Point2 p);

using CoefficientFn = std::function<Christoffel(Point2)>;

/// Coordinate curvature R^l_kij = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik,
/// with Γ differentiated by finite differences of step h.
Curvature riemann_tensor(const CoefficientFn& coeffs, const Domain& domain, Point2 p,
                         double h = 1e-4);

/// Gauss curvature κ*(p) = γ(R*(∂_1,∂_2)∂_2, ∂_1) / det γ.
double gauss_curvature(const Metric2D& metric, Point2 p);

/// div*X = (1/√det γ)[∂_1(√det γ X^1) + ∂_2(√det γ X^2)].
double divergence(const Metric2D& metric, const VectorField& field, Point2 p);

/// ρ^i = γ^{ik} ρ_k.
Vec2 sharp(const Metric2D& metric, const OneForm& rho, Point2 p);
/// X_i = γ_ik X^k.
Vec2 flat(const Metric2D& metric, const VectorField& field, Point2 p);
VectorField sharp(const Metric2D& metric, const OneForm& rho);
OneForm flat(const Metric2D& metric, const VectorField& field);

/// Coefficient of dρ = (∂_1 ρ_2 − ∂_2 ρ_1) du^1 ∧ du^2.
double exterior_derivative(const OneForm& rho, Point2 p, const Domain& domain);

OneForm zero_form();

/// Surfaces with a closed-form recipe turning a potential into a
/// divergence-representing 1-form.
enum class PotentialRecipe { euclidean, hyperbolic };

/// Recipe for a catalogue surface name; throws std::invalid_argument for
/// surfaces without one.
PotentialRecipe recipe_for(std::string_view surface_name);

/// Euclidean:  (ρ_1, ρ_2) = (−∂f/∂u^2, ∂f/∂u^1).
/// Hyperbolic: (ρ_1, ρ_2) = (∂f/∂u^2, −∂f/∂u^1 − 1/u^2).
OneForm potential_to_oneform(PotentialRecipe recipe, const ScalarField& f);

/// f = −½((u^1)^2 + (u^2)^2).
ScalarField euclid_quadratic_potential();
/// f = log u^2.
ScalarField hyp_log_potential();
ScalarField zero_potential();

/// n1 x n2 grid over [u1_lo, u1_hi] x [u2_lo, u2_hi], endpoints included,
/// u^1 varying fastest. A count of 1 places the sample at the low end.
std::vector<Point2> sample_grid(double u1_lo, double u1_hi, double u2_lo, double u2_hi, int n1, int n2);

}  // namespace berwald

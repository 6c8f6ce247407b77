#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "berwald/geometry.hpp"

namespace berwald {

/// Linear connection on a 2D chart, given by its coefficients
/// ∇_{∂_i} ∂_j = Γ^k_ij ∂_k (first lower index is the direction).
class Connection2D {
 public:
  Connection2D(std::string name, CoefficientFn coeffs, Domain domain,
               std::optional<OneForm> torsion_form = std::nullopt);

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  bool contains(Point2 p) const { return p.is_finite() && domain_(p); }
  /// The 1-form ρ of T(X,Y) = ρ(X)Y − ρ(Y)X when built by semi_symmetric().
  const std::optional<OneForm>& torsion_form() const { return torsion_form_; }

  /// Γ(p); throws DomainError outside the domain and NonFiniteError for
  /// non-finite coefficients.
  Christoffel operator()(Point2 p) const;

 private:
  std::string name_;
  CoefficientFn coeffs_;
  Domain domain_;
  std::optional<OneForm> torsion_form_;
};

Connection2D levi_civita(const Metric2D& metric);

/// ∇_X Y = ∇*_X Y − ρ(Y)X + γ(X,Y)ρ♯, i.e.
/// Γ^k_ij = Γ*^k_ij − ρ_j δ^k_i + γ_ij ρ^k.
Connection2D semi_symmetric(const Metric2D& metric, const OneForm& rho);

/// Copy of `conn` with Γ^k_ij shifted by `delta` everywhere.
Connection2D perturbed(const Connection2D& conn, int k, int i, int j, double delta);

/// T^k_ij = Γ^k_ij − Γ^k_ji, stored in the Christoffel layout.
Christoffel torsion(const Connection2D& conn, Point2 p);

/// Recovers ρ from T(X,Y) = ρ(X)Y − ρ(Y)X: ρ_1 = T^2_12, ρ_2 = T^1_21.
Vec2 torsion_oneform(const Christoffel& torsion_tensor);

Curvature curvature_tensor(const Connection2D& conn, Point2 p);

/// max_{i,j,k} |∂_k γ_ij − Γ^m_ki γ_mj − Γ^m_kj γ_im|; zero iff ∇γ = 0 at p.
double metric_defect(const Connection2D& conn, const Metric2D& metric, Point2 p);

/// Per-point residuals of κ* + div*ρ♯.
struct DivergenceReport {
  std::vector<Point2> points;
  std::vector<double> kappa;
  std::vector<double> divergence;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 1e-5;
  bool pass = false;
};

/// Throws std::invalid_argument on an empty sample.
DivergenceReport verify_divergence_representation(const Metric2D& metric, const OneForm& rho,
                                                  std::span<const Point2> sample, double tolerance = 1e-5);

/// CSV with header u1,u2,kappa,divergence,residual.
void write_csv(std::ostream& out, const DivergenceReport& report);

}  // namespace berwald

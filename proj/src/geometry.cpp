#include "berwald/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "berwald/differentiate.hpp"

namespace berwald {

std::array<double, 2> singular_values(const Mat2& m) {
  // σ² are the eigenvalues of mᵀm.
  const Mat2 s = m.transposed() * m;
  const double half_trace = 0.5 * s.trace();
  const double disc = std::sqrt(std::max(0.0, half_trace * half_trace - s.det()));
  return {std::sqrt(half_trace + disc), std::sqrt(std::max(0.0, half_trace - disc))};
}

Vec2 ScalarField::gradient(Point2 p, const Domain& domain) const {
  if (grad) return grad(p);
  return {numeric::partial(eval, p, 0, domain), numeric::partial(eval, p, 1, domain)};
}

// ─── Metric2D ───────────────────────────────────────────────────────────────

Metric2D::Metric2D(std::string name, MatrixFn g, Domain domain, PartialsFn partials)
    : name_(std::move(name)), g_(std::move(g)), domain_(std::move(domain)), partials_(std::move(partials)) {}

void Metric2D::require_domain(Point2 p) const {
  if (!contains(p))
    throw DomainError("point (" + std::to_string(p.u1) + ", " + std::to_string(p.u2) +
                      ") is outside the domain of metric '" + name_ + "'");
}

Mat2 Metric2D::operator()(Point2 p) const {
  require_domain(p);
  return g_(p);
}

Mat2 Metric2D::inverse(Point2 p) const { return (*this)(p).inverse(); }

double Metric2D::sqrt_det(Point2 p) const {
  const double d = (*this)(p).det();
  if (!(d >= 1e-14)) throw SingularMetricError("metric '" + name_ + "' is degenerate");
  return std::sqrt(d);
}

std::array<Mat2, 2> Metric2D::partials(Point2 p) const {
  require_domain(p);
  if (partials_) return partials_(p);
  return {numeric::partial(g_, p, 0, domain_), numeric::partial(g_, p, 1, domain_)};
}

Metric2D euclidean_metric() {
  return Metric2D(
      "euclidean", [](Point2) { return Mat2::identity(); }, whole_plane(),
      [](Point2) { return std::array<Mat2, 2>{}; });
}

Metric2D hyperbolic_metric() {
  return Metric2D(
      "hyperbolic",
      [](Point2 p) { return Mat2::identity() / (p.u2 * p.u2); },
      [](Point2 p) { return p.is_finite() && p.u2 > 0.0; },
      [](Point2 p) {
        return std::array<Mat2, 2>{Mat2{}, Mat2::identity() * (-2.0 / (p.u2 * p.u2 * p.u2))};
      });
}

Metric2D conformal_metric(const ScalarField& sigma, Domain domain) {
  Metric2D::PartialsFn partials;
  if (sigma.has_gradient()) {
    partials = [sigma](Point2 p) {
      const double scale = 2.0 * std::exp(2.0 * sigma(p));
      const Vec2 g = sigma.grad(p);
      return std::array<Mat2, 2>{Mat2::identity() * (scale * g.x), Mat2::identity() * (scale * g.y)};
    };
  }
  return Metric2D(
      "conformal(" + sigma.name + ")",
      [sigma](Point2 p) { return Mat2::identity() * std::exp(2.0 * sigma(p)); }, std::move(domain),
      std::move(partials));
}

// ─── Christoffel symbols and curvature ──────────────────────────────────────

Christoffel christoffel_lc(const Metric2D& metric, Point2 p) {
  const Mat2 inv = metric.inverse(p);
  const auto dg = metric.partials(p);
  // first[l][i][j] = ½(∂_i γ_jl + ∂_j γ_il − ∂_l γ_ij)
  double first[2][2][2];
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        first[l][i][j] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
  Christoffel gamma;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gamma(k, i, j) = inv(k, 0) * first[0][i][j] + inv(k, 1) * first[1][i][j];
  return gamma;
}

Curvature riemann_tensor(const CoefficientFn& coeffs, const Domain& domain, Point2 p, double h) {
  const Christoffel g = coeffs(p);
  const std::array<Christoffel, 2> dg{numeric::partial(coeffs, p, 0, h, domain),
                                      numeric::partial(coeffs, p, 1, h, domain)};
  Curvature r;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double v = dg[i](l, j, k) - dg[j](l, i, k);
          for (int m = 0; m < 2; ++m) v += g(l, i, m) * g(m, j, k) - g(l, j, m) * g(m, i, k);
          r(l, k, i, j) = v;
        }
  return r;
}

double gauss_curvature(const Metric2D& metric, Point2 p) {
  const Mat2 g = metric(p);
  const Curvature r = riemann_tensor([&metric](Point2 q) { return christoffel_lc(metric, q); },
                                     metric.domain(), p, numeric::kCurvatureStep);
  const double r1212 = g(0, 0) * r(0, 1, 0, 1) + g(1, 0) * r(1, 1, 0, 1);
  const double d = g.det();
  if (!(d >= 1e-14)) throw SingularMetricError("metric '" + metric.name() + "' is degenerate");
  return r1212 / d;
}

double divergence(const Metric2D& metric, const VectorField& field, Point2 p) {
  auto density = [&](int k) { return [&, k](Point2 q) { return metric.sqrt_det(q) * field(q)[k]; }; };
  const double flux = numeric::partial(density(0), p, 0, metric.domain()) +
                      numeric::partial(density(1), p, 1, metric.domain());
  return flux / metric.sqrt_det(p);
}

// ─── Musical isomorphisms ───────────────────────────────────────────────────

Vec2 sharp(const Metric2D& metric, const OneForm& rho, Point2 p) { return metric.inverse(p) * rho(p); }

Vec2 flat(const Metric2D& metric, const VectorField& field, Point2 p) { return metric(p) * field(p); }

VectorField sharp(const Metric2D& metric, const OneForm& rho) {
  return {rho.name + "#", [metric, rho](Point2 p) { return sharp(metric, rho, p); }};
}

OneForm flat(const Metric2D& metric, const VectorField& field) {
  return {field.name + "_b", [metric, field](Point2 p) { return flat(metric, field, p); }};
}

double exterior_derivative(const OneForm& rho, Point2 p, const Domain& domain) {
  auto component = [&](int k) { return [&, k](Point2 q) { return rho(q)[k]; }; };
  return numeric::partial(component(1), p, 0, domain) - numeric::partial(component(0), p, 1, domain);
}

OneForm zero_form() {
  return {"0", [](Point2) { return Vec2{}; }};
}

// ─── Potentials ─────────────────────────────────────────────────────────────

PotentialRecipe recipe_for(std::string_view surface_name) {
  if (surface_name == "euclidean") return PotentialRecipe::euclidean;
  if (surface_name == "hyperbolic") return PotentialRecipe::hyperbolic;
  throw std::invalid_argument("surface '" + std::string(surface_name) +
                              "' has no potential-to-1-form recipe");
}

OneForm potential_to_oneform(PotentialRecipe recipe, const ScalarField& f) {
  switch (recipe) {
    case PotentialRecipe::euclidean: {
      const Domain domain = whole_plane();
      return {"rho[" + f.name + "]", [f, domain](Point2 p) {
                const Vec2 df = f.gradient(p, domain);
                return Vec2{-df.y, df.x};
              }};
    }
    case PotentialRecipe::hyperbolic: {
      const Domain domain = hyperbolic_metric().domain();
      return {"rho[" + f.name + "]", [f, domain](Point2 p) {
                const Vec2 df = f.gradient(p, domain);
                return Vec2{df.y, -df.x - 1.0 / p.u2};
              }};
    }
  }
  throw std::invalid_argument("unknown potential recipe");
}

ScalarField euclid_quadratic_potential() {
  return {"euclid-quadratic", [](Point2 p) { return -0.5 * (p.u1 * p.u1 + p.u2 * p.u2); },
          [](Point2 p) { return Vec2{-p.u1, -p.u2}; }};
}

ScalarField hyp_log_potential() {
  return {"hyp-log", [](Point2 p) { return std::log(p.u2); }, [](Point2 p) { return Vec2{0.0, 1.0 / p.u2}; }};
}

ScalarField zero_potential() {
  return {"0", [](Point2) { return 0.0; }, [](Point2) { return Vec2{}; }};
}

std::vector<Point2> sample_grid(double u1_lo, double u1_hi, double u2_lo, double u2_hi, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sample grid needs at least one point per axis");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n1) * n2);
  for (int b = 0; b < n2; ++b)
    for (int a = 0; a < n1; ++a) {
      const double s = n1 == 1 ? 0.0 : static_cast<double>(a) / (n1 - 1);
      const double t = n2 == 1 ? 0.0 : static_cast<double>(b) / (n2 - 1);
      pts.push_back({u1_lo + s * (u1_hi - u1_lo), u2_lo + t * (u2_hi - u2_lo)});
    }
  return pts;
}

}  // namespace berwald

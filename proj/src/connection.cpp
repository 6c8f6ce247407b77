#include "berwald/connection.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "berwald/differentiate.hpp"

namespace berwald {

Connection2D::Connection2D(std::string name, CoefficientFn coeffs, Domain domain,
                           std::optional<OneForm> torsion_form)
    : name_(std::move(name)),
      coeffs_(std::move(coeffs)),
      domain_(std::move(domain)),
      torsion_form_(std::move(torsion_form)) {}

Christoffel Connection2D::operator()(Point2 p) const {
  if (!contains(p))
    throw DomainError("point (" + std::to_string(p.u1) + ", " + std::to_string(p.u2) +
                      ") is outside the domain of connection '" + name_ + "'");
  Christoffel g = coeffs_(p);
  if (!g.is_finite()) throw NonFiniteError("connection '" + name_ + "' has non-finite coefficients");
  return g;
}

Connection2D levi_civita(const Metric2D& metric) {
  return Connection2D(
      "levi-civita(" + metric.name() + ")", [metric](Point2 p) { return christoffel_lc(metric, p); },
      metric.domain());
}

Connection2D semi_symmetric(const Metric2D& metric, const OneForm& rho) {
  auto coeffs = [metric, rho](Point2 p) {
    Christoffel g = christoffel_lc(metric, p);
    const Mat2 gamma = metric(p);
    const Vec2 lower = rho(p);
    const Vec2 upper = gamma.inverse() * lower;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(k, i, j) += (k == i ? -lower[j] : 0.0) + gamma(i, j) * upper[k];
    return g;
  };
  return Connection2D("semi-symmetric(" + metric.name() + ", " + rho.name + ")", std::move(coeffs),
                      metric.domain(), rho);
}

Connection2D perturbed(const Connection2D& conn, int k, int i, int j, double delta) {
  return Connection2D(
      conn.name() + "+perturbation",
      [conn, k, i, j, delta](Point2 p) {
        Christoffel g = conn(p);
        g(k, i, j) += delta;
        return g;
      },
      conn.domain(), conn.torsion_form());
}

Christoffel torsion(const Connection2D& conn, Point2 p) {
  const Christoffel g = conn(p);
  Christoffel t;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t(k, i, j) = g(k, i, j) - g(k, j, i);
  return t;
}

Vec2 torsion_oneform(const Christoffel& t) { return {t(1, 0, 1), t(0, 1, 0)}; }

Curvature curvature_tensor(const Connection2D& conn, Point2 p) {
  return riemann_tensor([&conn](Point2 q) { return conn(q); }, conn.domain(), p, numeric::kCurvatureStep);
}

double metric_defect(const Connection2D& conn, const Metric2D& metric, Point2 p) {
  const Christoffel g = conn(p);
  const Mat2 gamma = metric(p);
  const auto dgamma = metric.partials(p);
  double defect = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double v = dgamma[k](i, j);
        for (int m = 0; m < 2; ++m) v -= g(m, k, i) * gamma(m, j) + g(m, k, j) * gamma(i, m);
        defect = std::max(defect, std::abs(v));
      }
  return defect;
}

DivergenceReport verify_divergence_representation(const Metric2D& metric, const OneForm& rho,
                                                  std::span<const Point2> sample, double tolerance) {
  if (sample.empty()) throw std::invalid_argument("divergence check needs at least one sample point");
  const VectorField rho_sharp = sharp(metric, rho);
  DivergenceReport report;
  report.tolerance = tolerance;
  double sum = 0.0;
  for (const Point2& p : sample) {
    const double kappa = gauss_curvature(metric, p);
    const double div = divergence(metric, rho_sharp, p);
    const double residual = kappa + div;
    report.points.push_back(p);
    report.kappa.push_back(kappa);
    report.divergence.push_back(div);
    report.residuals.push_back(residual);
    report.max_residual = std::max(report.max_residual, std::abs(residual));
    sum += std::abs(residual);
  }
  report.mean_residual = sum / static_cast<double>(sample.size());
  report.pass = report.max_residual <= tolerance;
  return report;
}

void write_csv(std::ostream& out, const DivergenceReport& report) {
  out << "u1,u2,kappa,divergence,residual\n";
  char line[160];
  for (std::size_t n = 0; n < report.points.size(); ++n) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", report.points[n].u1,
                  report.points[n].u2, report.kappa[n], report.divergence[n], report.residuals[n]);
    out << line;
  }
}

}  // namespace berwald

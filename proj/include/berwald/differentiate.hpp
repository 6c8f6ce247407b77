#pragma once

#include <cmath>
#include <string>

#include "berwald/types.hpp"

namespace berwald::numeric {

/// Default relative step for first derivatives of fields.
inline constexpr double kFieldStep = 1e-5;
/// Absolute step for differentiating connection coefficients (curvature).
inline constexpr double kCurvatureStep = 1e-4;

/// Step h = base * max(1, |coordinate|).
inline double relative_step(double base, double coordinate) {
  return base * std::max(1.0, std::abs(coordinate));
}

/// Partial derivative of `f` along u^k at p with step h.
///
/// Uses the fourth-order central stencil when p ± 10h e_k both lie in the
/// domain. Near a boundary the step is shrunk (four times, by 10x) to look
/// for room on both sides; failing that, the second-order one-sided stencil
/// on the interior side is used at the original step. A DomainError is
/// thrown when neither side has room. Works for any value type with
/// vector-space operators (double, Vec2, Mat2, Christoffel).
template <class F>
auto partial(const F& f, Point2 p, int k, double h, const Domain& domain) -> decltype(f(p)) {
  int side = 0;  // +1 forward, -1 backward, 0 none
  double side_h = h;
  double step = h;
  for (int attempt = 0; attempt < 5; ++attempt, step *= 0.1) {
    const Vec2 e = axis(k, step);
    const bool ahead = domain(p + 10.0 * e);
    const bool behind = domain(p - 10.0 * e);
    if (ahead && behind)
      return (8.0 * (f(p + e) - f(p - e)) - (f(p + 2.0 * e) - f(p - 2.0 * e))) / (12.0 * step);
    if (side == 0 && (ahead || behind)) {
      side = ahead ? 1 : -1;
      side_h = step;
    }
  }
  if (side == 0)
    throw DomainError("finite-difference stencil leaves the domain at (" + std::to_string(p.u1) + ", " +
                      std::to_string(p.u2) + ")");
  const Vec2 e = axis(k, side * side_h);
  return (-3.0 * f(p) + 4.0 * f(p + e) - f(p + 2.0 * e)) / (2.0 * side * side_h);
}

/// Partial derivative with the default relative field step.
template <class F>
auto partial(const F& f, Point2 p, int k, const Domain& domain) -> decltype(f(p)) {
  return partial(f, p, k, relative_step(kFieldStep, p[k]), domain);
}

}  // namespace berwald::numeric

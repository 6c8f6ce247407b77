#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace berwald {

// ─── Errors ─────────────────────────────────────────────────────────────────

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point (or a stencil, or a curve) left the surface domain.
struct DomainError : Error {
  using Error::Error;
};

struct SingularMetricError : Error {
  using Error::Error;
};

/// The fiber Hessian of E = F^2/2 is not positive definite.
struct ConvexityError : Error {
  using Error::Error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

/// Malformed scenario file, expression or command-line value.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ─── Points, vectors, matrices ──────────────────────────────────────────────

/// Coordinates (u^1, u^2) of a point on the surface.
struct Point2 {
  double u1 = 0.0;
  double u2 = 0.0;

  double operator[](int k) const { return k == 0 ? u1 : u2; }
  bool is_finite() const { return std::isfinite(u1) && std::isfinite(u2); }
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Tangent vector or covector components in the coordinate frame.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double operator[](int k) const { return k == 0 ? x : y; }
  double& operator[](int k) { return k == 0 ? x : y; }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend Vec2 operator/(Vec2 a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

inline Point2 operator+(const Point2& p, const Vec2& v) { return {p.u1 + v.x, p.u2 + v.y}; }
inline Point2 operator-(const Point2& p, const Vec2& v) { return {p.u1 - v.x, p.u2 - v.y}; }
inline Vec2 operator-(const Point2& p, const Point2& q) { return {p.u1 - q.u1, p.u2 - q.u2}; }

/// Unit coordinate direction e_k scaled by h.
inline Vec2 axis(int k, double h = 1.0) { return k == 0 ? Vec2{h, 0.0} : Vec2{0.0, h}; }

/// Row-major 2x2 matrix.
struct Mat2 {
  std::array<double, 4> a{};

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 from_columns(const Vec2& c0, const Vec2& c1) {
    return Mat2{{c0.x, c1.x, c0.y, c1.y}};
  }

  double operator()(int i, int j) const { return a[2 * i + j]; }
  double& operator()(int i, int j) { return a[2 * i + j]; }

  Vec2 column(int j) const { return {a[j], a[2 + j]}; }
  double det() const { return a[0] * a[3] - a[1] * a[2]; }
  double trace() const { return a[0] + a[3]; }
  Mat2 transposed() const { return Mat2{{a[0], a[2], a[1], a[3]}}; }
  bool is_finite() const {
    for (double v : a)
      if (!std::isfinite(v)) return false;
    return true;
  }

  /// Closed-form inverse; throws SingularMetricError when |det| < min_det.
  Mat2 inverse(double min_det = 1e-14) const {
    const double d = det();
    if (!(std::abs(d) >= min_det))
      throw SingularMetricError("2x2 matrix is singular (det = " + std::to_string(d) + ")");
    return Mat2{{a[3] / d, -a[1] / d, -a[2] / d, a[0] / d}};
  }

  Mat2& operator+=(const Mat2& o) { for (int i = 0; i < 4; ++i) a[i] += o.a[i]; return *this; }
  Mat2& operator-=(const Mat2& o) { for (int i = 0; i < 4; ++i) a[i] -= o.a[i]; return *this; }
  Mat2& operator*=(double s) { for (double& v : a) v *= s; return *this; }
  friend Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
  friend Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
  friend Mat2 operator*(double s, Mat2 x) { return x *= s; }
  friend Mat2 operator*(Mat2 x, double s) { return x *= s; }
  friend Mat2 operator/(Mat2 x, double s) { return x *= 1.0 / s; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
    return r;
  }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m(0, 0) * v.x + m(0, 1) * v.y, m(1, 0) * v.x + m(1, 1) * v.y};
  }
};

/// Largest absolute entry of a - b.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

/// Singular values (largest first) of a 2x2 matrix.
std::array<double, 2> singular_values(const Mat2& m);

/// Connection coefficients Γ^k_ij, k = output index, i = direction, j = argument:
/// ∇_{∂_i} ∂_j = Γ^k_ij ∂_k. Indices are 0-based.
struct Christoffel {
  std::array<double, 8> c{};

  double operator()(int k, int i, int j) const { return c[4 * k + 2 * i + j]; }
  double& operator()(int k, int i, int j) { return c[4 * k + 2 * i + j]; }
  bool is_finite() const {
    for (double v : c)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Christoffel& operator+=(const Christoffel& o) { for (int n = 0; n < 8; ++n) c[n] += o.c[n]; return *this; }
  Christoffel& operator-=(const Christoffel& o) { for (int n = 0; n < 8; ++n) c[n] -= o.c[n]; return *this; }
  Christoffel& operator*=(double s) { for (double& v : c) v *= s; return *this; }
  friend Christoffel operator+(Christoffel x, const Christoffel& y) { return x += y; }
  friend Christoffel operator-(Christoffel x, const Christoffel& y) { return x -= y; }
  friend Christoffel operator*(double s, Christoffel x) { return x *= s; }
  friend Christoffel operator*(Christoffel x, double s) { return x *= s; }
  friend Christoffel operator/(Christoffel x, double s) { return x *= 1.0 / s; }
};

/// Curvature components R^l_kij with R(∂_i, ∂_j)∂_k = R^l_kij ∂_l.
struct Curvature {
  std::array<double, 16> r{};

  double operator()(int l, int k, int i, int j) const { return r[8 * l + 4 * k + 2 * i + j]; }
  double& operator()(int l, int k, int i, int j) { return r[8 * l + 4 * k + 2 * i + j]; }
  double max_abs() const {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Domain predicate of a coordinate chart.
using Domain = std::function<bool(Point2)>;

inline Domain whole_plane() {
  return [](Point2 p) { return p.is_finite(); };
}

}  // namespace berwald

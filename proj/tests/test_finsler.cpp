#include <chrono>
#include <cmath>
#include <numbers>

#include "berwald/finsler.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace berwald;

namespace {

constexpr double kPi = std::numbers::pi;
// Positive root of 3y² + 8y − 12 = 0.
constexpr double kYStar = 1.070367516975993;

const TrifocalEllipse kPaperEllipse{{1, 0}, 4};

Connection2D euclid_conn() {
  return semi_symmetric(euclidean_metric(), potential_to_oneform(PotentialRecipe::euclidean, euclid_quadratic_potential()));
}

Connection2D hyp_conn() {
  return semi_symmetric(hyperbolic_metric(), potential_to_oneform(PotentialRecipe::hyperbolic, hyp_log_potential()));
}

FinslerStructure euclid_structure() { return {{0, 0}, kPaperEllipse, euclid_conn()}; }
FinslerStructure hyp_structure() { return {{0, 1}, kPaperEllipse, hyp_conn()}; }

}  // namespace

TEST_CASE("membership: worked examples") {
  CHECK(membership(kPaperEllipse, {0, 0}) == doctest::Approx(-2.0));
  CHECK(std::abs(membership(kPaperEllipse, {4.0 / 3.0, 0})) <= 1e-14);
  CHECK(std::abs(membership(kPaperEllipse, {0, kYStar})) <= 1e-14);
  CHECK(membership(kPaperEllipse, {2, 0}) > 0.0);
}

TEST_CASE("TrifocalEllipse rejects an exterior origin") {
  CHECK_THROWS_AS(TrifocalEllipse({1, 0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(TrifocalEllipse({NAN, 0}, 4.0), std::invalid_argument);
  CHECK_NOTHROW(TrifocalEllipse({0, 0}, 1.0));
}

TEST_CASE("gauge: worked examples") {
  CHECK(std::abs(gauge(kPaperEllipse, {4.0 / 3.0, 0}) - 1.0) <= 1e-10);
  CHECK(std::abs(gauge(kPaperEllipse, {1, 0}) - 0.75) <= 1e-10);
  CHECK(std::abs(gauge(kPaperEllipse, {0, kYStar}) - 1.0) <= 1e-10);
  CHECK(gauge(kPaperEllipse, {0, 0}) == 0.0);
  CHECK_THROWS_AS(gauge(kPaperEllipse, {INFINITY, 0}), NonFiniteError);
  // Degenerate circle: 3|v| = level.
  CHECK(gauge(TrifocalEllipse({0, 0}, 3.0), {0.6, 0.8}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauge: homogeneity and subadditivity on random pairs") {
  const auto vs = testing::random_vectors(1000, 5.0, 21);
  const auto ws = testing::random_vectors(1000, 5.0, 22);
  for (std::size_t n = 0; n < vs.size(); ++n) {
    const double alpha = 0.1 + 0.01 * static_cast<double>(n % 300);
    const double f = gauge(kPaperEllipse, vs[n]);
    CHECK(std::abs(gauge(kPaperEllipse, alpha * vs[n]) - alpha * f) <= 1e-10 * std::max(1.0, alpha * f));
    CHECK(gauge(kPaperEllipse, vs[n] + ws[n]) <= f + gauge(kPaperEllipse, ws[n]) + 1e-12);
  }
}

TEST_CASE("boundary points lie on the curve") {
  const auto pts = kPaperEllipse.boundary(64);
  CHECK(pts.size() == 65);
  CHECK(pts.front() == pts.back());
  for (const Vec2& w : pts) CHECK(std::abs(membership(kPaperEllipse, w)) <= 1e-12);
}

TEST_CASE("trifocal indicatrix is not an ellipse") {
  CHECK(ellipse_fit_residual(kPaperEllipse) >= 1e-2);
  CHECK(ellipse_fit_residual(TrifocalEllipse({0, 0}, 3.0)) <= 1e-12);
}

TEST_CASE("FinslerStructure: holonomy probe") {
  CHECK(euclid_structure().probe_holonomy_defect() <= 1e-7);
  CHECK(hyp_structure().probe_holonomy_defect() <= 1e-7);
  // Probe shrinks to fit near the boundary of the half-plane.
  CHECK_NOTHROW(FinslerStructure({0, 0.1}, kPaperEllipse, hyp_conn()));
  CHECK_THROWS_AS(FinslerStructure({0, 1}, kPaperEllipse, levi_civita(hyperbolic_metric())), std::invalid_argument);
  CHECK_THROWS_AS(FinslerStructure({0, -1}, kPaperEllipse, hyp_conn()), DomainError);
}

TEST_CASE("indicatrix_at: base point and path checks") {
  const FinslerStructure fs = hyp_structure();
  const TranslatedIndicatrix at_base = indicatrix_at(fs, {0, 1});
  CHECK(max_abs_diff(at_base.transport, Mat2::identity()) == 0.0);
  CHECK(at_base.foci()[2] == Vec2{1, 0});
  CHECK_THROWS_AS(indicatrix_at(fs, {1, 1}, Curve::segment({0, 2}, {1, 1})), std::invalid_argument);
}

TEST_CASE("indicatrix_at: euclidean radial foci") {
  const FinslerStructure fs = euclid_structure();
  for (double t : {0.25, 0.5, 1.0}) {
    const auto foci = indicatrix_at(fs, {t, t}).foci();
    CHECK(std::abs(norm(foci[2]) - 1.0) <= 1e-8);
    CHECK(norm(foci[2] - Vec2{std::cos(t * t), std::sin(t * t)}) <= 1e-8);
    CHECK(norm(foci[0] + foci[2]) == 0.0);
  }
}

TEST_CASE("indicatrix_at: hyperbolic line foci") {
  const FinslerStructure fs = hyp_structure();
  for (double t : {0.5, 1.0, 2.0}) {
    const Vec2 x = indicatrix_at(fs, {t, t + 1}).foci()[2];
    const double s = t + 1;
    CHECK(norm(x - s * Vec2{std::cos(std::log(s)), std::sin(std::log(s))}) <= 1e-8);
  }
}

TEST_CASE("indicatrix_at: path independence") {
  const FinslerStructure fs = hyp_structure();
  const Point2 p{1.5, 2.5};
  const Mat2 straight = indicatrix_at(fs, p).transport;
  const Mat2 detour = indicatrix_at(fs, p, Curve::polyline({{0, 1}, {-1, 0.5}, {0.5, 3.5}, p})).transport;
  CHECK(max_abs_diff(straight, detour) <= 1e-6);
}

TEST_CASE("finsler_norm: invariance examples") {
  const FinslerStructure euclid = euclid_structure();
  CHECK(finsler_norm(euclid, {0, 0}, {1, 0}) == doctest::Approx(0.75).epsilon(1e-10));
  for (double t : {0.3, 0.8, 1.2}) {
    const Vec2 x = parallel_transport(euclid_conn(), Curve::segment({0, 0}, {t, t}), {1, 0}).vectors.back();
    CHECK(std::abs(finsler_norm(euclid, {t, t}, x) - 0.75) <= 1e-8);
  }

  const FinslerStructure hyp = hyp_structure();
  const Mat2 m = transport_matrix(hyp_conn(), Curve::segment({0, 1}, {0, 2}));
  CHECK(std::abs(finsler_norm(hyp, {0, 2}, m * Vec2{1, 0}) - 0.75) <= 1e-10);
  CHECK(std::abs(finsler_norm(hyp, {0, 2}, 3.0 * m * Vec2{1, 0}) - 2.25) <= 1e-9);
}

TEST_CASE("compatibility_check: figure scenarios pass") {
  const auto circle = compatibility_check(euclid_structure(), Curve::circle({0, 1}, 1.0, 0.0, 2 * kPi), {1, 0}, 50);
  CHECK(circle.pass);
  CHECK(circle.ts.size() == 50);

  const auto line = compatibility_check(hyp_structure(), Curve::line({0, 1}, {1, 1}, 0.0, 2.0), {1, 0}, 50);
  CHECK(line.pass);
  CHECK(line.max_deviation <= 1e-6);
}

TEST_CASE("compatibility_check: Levi-Civita transport is a negative control") {
  const Connection2D lc = levi_civita(euclidean_metric());
  const auto report =
      compatibility_check(euclid_structure(), Curve::circle({0, 1}, 1.0, 0.0, 2 * kPi), {1, 0}, 50, &lc);
  CHECK_FALSE(report.pass);
  CHECK(report.max_deviation > 1e-3);
}

TEST_CASE("averaged_metric: circle control is proportional to the identity") {
  const FinslerStructure fs({0, 0}, TrifocalEllipse({0, 0}, 3.0), euclid_conn());
  const Mat2 g = averaged_metric(fs, {0, 0});
  CHECK(std::abs(g(0, 1)) <= 1e-3 * g(0, 0));
  CHECK(std::abs(g(0, 0) - g(1, 1)) <= 1e-3 * g(0, 0));
  // Unit circle: g = δ and μ = dθ, so the integral is 2π δ.
  CHECK(g(0, 0) == doctest::Approx(2 * kPi).epsilon(1e-6));
}

TEST_CASE("averaged_metric: congruence under transport") {
  const FinslerStructure fs = euclid_structure();
  const auto start = std::chrono::steady_clock::now();
  const Mat2 base = averaged_metric(fs, {0, 0});
  const TranslatedIndicatrix at = indicatrix_at(fs, {1, 1});
  const Mat2 moved = averaged_metric(at);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Mat2 pulled = at.transport.transposed() * moved * at.transport;
  CHECK(max_abs_diff(pulled, base) <= 1e-3);
  CHECK(std::abs(base(0, 1) - base(1, 0)) <= 1e-12);
  CHECK(seconds < 10.0);
}

TEST_CASE("averaged_metric: positive definite at random points") {
  const FinslerStructure fs = hyp_structure();
  for (const Point2 p : testing::random_points(10, -1, 1, 0.5, 2.5)) {
    const Mat2 g = averaged_metric(fs, p, 180);
    CHECK(g(0, 0) > 0.0);
    CHECK(g.det() > 0.0);
    CHECK(g(0, 1) == doctest::Approx(g(1, 0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(averaged_metric(fs, {0, 1}, 2), std::invalid_argument);
}

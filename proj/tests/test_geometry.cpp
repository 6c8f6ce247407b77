#include <cmath>

#include "berwald/connection.hpp"
#include "berwald/differentiate.hpp"
#include "berwald/geometry.hpp"
#include "berwald/surfaces.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace berwald;

namespace {

// σ = 0.1 sin(u¹) sin(u²), with analytic derivatives for the oracles below.
double sigma(Point2 p) { return 0.1 * std::sin(p.u1) * std::sin(p.u2); }

ScalarField sigma_without_gradient() { return {"sigma", sigma, {}}; }

// Brute force: differentiate γ with h = 1e-4 and contract by hand.
Christoffel christoffel_oracle(const std::function<Mat2(Point2)>& g, Point2 p) {
  const double h = 1e-4;
  Mat2 dg[2];
  for (int k = 0; k < 2; ++k) dg[k] = (g(p + axis(k, h)) - g(p - axis(k, h))) / (2 * h);
  const Mat2 inv = g(p).inverse();
  Christoffel out;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double v = 0;
        for (int l = 0; l < 2; ++l) v += 0.5 * inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        out(k, i, j) = v;
      }
  return out;
}

}  // namespace

TEST_CASE("christoffel_lc: euclidean coefficients vanish") {
  const Metric2D m = euclidean_metric();
  for (const Point2 p : testing::random_points(10, -3, 3, -3, 3)) {
    const Christoffel g = christoffel_lc(m, p);
    for (double v : g.c) CHECK(v == 0.0);
  }
}

TEST_CASE("christoffel_lc: hyperbolic table at (0, 2)") {
  const Christoffel g = christoffel_lc(hyperbolic_metric(), {0.0, 2.0});
  CHECK(g(0, 0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(g(0, 1, 0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(g(1, 0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g(1, 1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(g(0, 0, 0) == 0.0);
  CHECK(g(0, 1, 1) == 0.0);
  CHECK(g(1, 0, 1) == 0.0);
  CHECK(g(1, 1, 0) == 0.0);
}

TEST_CASE("christoffel_lc: conformal metric matches the brute-force oracle") {
  const Point2 p{0.3, 0.7};
  const Metric2D numeric = conformal_metric(sigma_without_gradient());
  const Metric2D analytic = conformal_metric(TrigConformalFactor{0.1, 1, 1}.field());
  const Christoffel oracle = christoffel_oracle([](Point2 q) { return Mat2::identity() * std::exp(2 * sigma(q)); }, p);
  const Christoffel a = christoffel_lc(analytic, p);
  const Christoffel n = christoffel_lc(numeric, p);
  for (int m = 0; m < 8; ++m) {
    CHECK(a.c[m] == doctest::Approx(oracle.c[m]).epsilon(1e-7));
    CHECK(n.c[m] == doctest::Approx(oracle.c[m]).epsilon(1e-7));
  }
}

TEST_CASE("christoffel_lc: symmetric in the lower indices") {
  const Metric2D metrics[] = {hyperbolic_metric(), conformal_metric(sigma_without_gradient())};
  for (const Metric2D& m : metrics)
    for (const Point2 p : testing::random_points(25, -2, 2, 0.2, 3)) {
      const Christoffel g = christoffel_lc(m, p);
      for (int k = 0; k < 2; ++k) CHECK(g(k, 0, 1) == doctest::Approx(g(k, 1, 0)).epsilon(1e-12));
    }
}

TEST_CASE("christoffel_lc: errors") {
  CHECK_THROWS_AS(christoffel_lc(hyperbolic_metric(), {0.0, -1.0}), DomainError);
  const Metric2D degenerate("degenerate", [](Point2) { return Mat2{{1, 1, 1, 1}}; });
  CHECK_THROWS_AS(christoffel_lc(degenerate, {0.0, 0.0}), SingularMetricError);
}

TEST_CASE("Levi-Civita connection is metric compatible") {
  const Metric2D metrics[] = {hyperbolic_metric(), conformal_metric(sigma_without_gradient())};
  for (const Metric2D& m : metrics) {
    const Connection2D lc = levi_civita(m);
    for (const Point2 p : testing::random_points(25, -2, 2, 0.2, 3)) CHECK(metric_defect(lc, m, p) <= 1e-6);
  }
}

TEST_CASE("gauss_curvature: euclidean, hyperbolic, conformal") {
  for (const Point2 p : testing::random_points(10, -3, 3, -3, 3)) CHECK(gauss_curvature(euclidean_metric(), p) == 0.0);
  CHECK(gauss_curvature(hyperbolic_metric(), {1.5, 0.4}) == doctest::Approx(-1.0).epsilon(1e-6));

  const Point2 p{1.0, 2.0};
  const double s11 = -sigma(p), s22 = -sigma(p);  // second derivatives of the product of sines
  const double expected = -std::exp(-2 * sigma(p)) * (s11 + s22);
  CHECK(gauss_curvature(conformal_metric(sigma_without_gradient()), p) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(gauss_curvature(conformal_metric(TrigConformalFactor{0.1, 1, 1}.field()), p) ==
        doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("gauss_curvature: hyperbolic grid stays at -1") {
  for (const Point2 p : sample_grid(-2, 2, 0.1, 4, 20, 20))
    CHECK(std::abs(gauss_curvature(hyperbolic_metric(), p) + 1.0) <= 1e-6);
}

TEST_CASE("gauss_curvature: outside the domain") {
  CHECK_THROWS_AS(gauss_curvature(hyperbolic_metric(), {0.0, 0.0}), DomainError);
}

TEST_CASE("divergence: worked examples") {
  const VectorField rotation{"rot", [](Point2 p) { return Vec2{p.u2, -p.u1}; }};
  const VectorField hyp{"hyp", [](Point2 p) { return Vec2{p.u2, -p.u2}; }};
  const VectorField zero{"0", [](Point2) { return Vec2{}; }};
  for (const Point2 p : testing::random_points(20, -2, 2, 0.2, 3)) {
    CHECK(std::abs(divergence(euclidean_metric(), rotation, p)) <= 1e-9);
    CHECK(divergence(hyperbolic_metric(), hyp, p) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(divergence(hyperbolic_metric(), zero, p) == 0.0);
  }
}

TEST_CASE("divergence: one-sided stencil near the half-plane boundary") {
  const VectorField hyp{"hyp", [](Point2 p) { return Vec2{p.u2, -p.u2}; }};
  // 10h exceeds the distance to u² = 0 here, so the step has to shrink.
  CHECK(divergence(hyperbolic_metric(), hyp, {0.0, 5e-5}) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("partial: one-sided stencil on a closed boundary") {
  const Domain upper = [](Point2 p) { return p.u2 >= 0.0; };
  auto f = [](Point2 p) { return p.u2 * p.u2 + 3.0 * p.u2; };
  CHECK(numeric::partial(f, {0.0, 0.0}, 1, 1e-3, upper) == doctest::Approx(3.0).epsilon(1e-12));
  const Domain nowhere = [](Point2) { return false; };
  CHECK_THROWS_AS(numeric::partial(f, {0.0, 0.0}, 1, 1e-3, nowhere), DomainError);
}

TEST_CASE("sharp and flat") {
  const OneForm rho{"rho", [](Point2 p) { return Vec2{1 / p.u2, -1 / p.u2}; }};
  const Vec2 up = sharp(hyperbolic_metric(), rho, {0.0, 2.0});
  CHECK(up.x == doctest::Approx(2.0));
  CHECK(up.y == doctest::Approx(-2.0));

  const OneForm arbitrary{"a", [](Point2 p) { return Vec2{std::sin(p.u1), p.u2 * p.u2}; }};
  const Vec2 same = sharp(euclidean_metric(), arbitrary, {0.4, 0.9});
  CHECK(same == arbitrary({0.4, 0.9}));
}

TEST_CASE("flat after sharp is the identity on random data") {
  const Metric2D metrics[] = {hyperbolic_metric(), conformal_metric(sigma_without_gradient())};
  const auto pts = testing::random_points(100, -2, 2, 0.2, 3);
  const auto vals = testing::random_vectors(100, 5.0);
  for (const Metric2D& m : metrics)
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const Vec2 v = vals[n];
      const OneForm rho{"const", [v](Point2) { return v; }};
      const VectorField up = sharp(m, rho);
      const Vec2 back = flat(m, up, pts[n]);
      CHECK(norm(back - v) <= 1e-12 * std::max(1.0, norm(v)));
    }
}

TEST_CASE("potential_to_oneform: worked examples") {
  const OneForm euclid = potential_to_oneform(PotentialRecipe::euclidean, euclid_quadratic_potential());
  const OneForm hyp = potential_to_oneform(PotentialRecipe::hyperbolic, hyp_log_potential());
  const OneForm zero = potential_to_oneform(PotentialRecipe::euclidean, zero_potential());
  for (const Point2 p : testing::random_points(20, -2, 2, 0.2, 3)) {
    CHECK(norm(euclid(p) - Vec2{p.u2, -p.u1}) <= 1e-15);
    CHECK(norm(hyp(p) - Vec2{1 / p.u2, -1 / p.u2}) <= 1e-15);
    CHECK(zero(p) == Vec2{});
  }
}

TEST_CASE("potential_to_oneform: finite-difference gradient for potentials without one") {
  const ScalarField f{"f", [](Point2 p) { return -0.5 * (p.u1 * p.u1 + p.u2 * p.u2); }, {}};
  const OneForm rho = potential_to_oneform(PotentialRecipe::euclidean, f);
  const Point2 p{0.7, -1.3};
  CHECK(norm(rho(p) - Vec2{p.u2, -p.u1}) <= 1e-9);
}

TEST_CASE("recipe_for rejects surfaces without a recipe") {
  CHECK(recipe_for("hyperbolic") == PotentialRecipe::hyperbolic);
  CHECK_THROWS_AS(recipe_for("flat-torus"), std::invalid_argument);
}

TEST_CASE("divergence representation identity holds for the built-in pairs") {
  struct Case {
    Metric2D metric;
    OneForm rho;
    std::vector<Point2> points;
  };
  const Case cases[] = {
      {euclidean_metric(), potential_to_oneform(PotentialRecipe::euclidean, euclid_quadratic_potential()),
       sample_grid(-2, 2, -2, 2, 9, 9)},
      {hyperbolic_metric(), potential_to_oneform(PotentialRecipe::hyperbolic, hyp_log_potential()),
       sample_grid(-2, 2, 0.2, 3, 9, 9)},
  };
  for (const Case& c : cases)
    for (const Point2 p : c.points)
      CHECK(std::abs(gauss_curvature(c.metric, p) + divergence(c.metric, sharp(c.metric, c.rho), p)) <= 1e-6);
}

TEST_CASE("exterior derivative detects non-closed torsion forms") {
  const OneForm euclid = potential_to_oneform(PotentialRecipe::euclidean, euclid_quadratic_potential());
  const OneForm hyp = potential_to_oneform(PotentialRecipe::hyperbolic, hyp_log_potential());
  const OneForm exact{"df", [](Point2 p) { return Vec2{2 * p.u1, 2 * p.u2}; }};
  const Point2 p{0.5, 1.5};
  CHECK(exterior_derivative(euclid, p, whole_plane()) == doctest::Approx(-2.0));
  CHECK(exterior_derivative(hyp, p, hyperbolic_metric().domain()) == doctest::Approx(1 / (1.5 * 1.5)));
  CHECK(std::abs(exterior_derivative(exact, p, whole_plane())) <= 1e-9);
}

TEST_CASE("singular values") {
  const auto sv = singular_values(Mat2{{3, 0, 0, -2}});
  CHECK(sv[0] == doctest::Approx(3));
  CHECK(sv[1] == doctest::Approx(2));
}

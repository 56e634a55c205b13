#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qlm/grid.hpp"

using namespace qlm;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid rejects fewer than four nodes") {
  CHECK_THROWS_AS(Grid(3), InvalidParameter);
  CHECK_NOTHROW(Grid(4));
}

TEST_CASE("nodes are interior and increasing in theta") {
  for (int n : {4, 16, 32, 33}) {
    const Grid g(n);
    REQUIRE(g.size() == n);
    CHECK(g.theta()(0) > 0.0);
    CHECK(g.theta()(n - 1) < std::numbers::pi);
    for (int j = 1; j < n; ++j) CHECK(g.theta()(j) > g.theta()(j - 1));
  }
}

TEST_CASE("quadrature of the constant and of cos^2") {
  const Grid g(16);
  CHECK_THAT(g.integrate(Field::Ones(16)), WithinAbs(2.0, 1e-12));
  CHECK_THAT(g.integrate(g.x().square()), WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("quadrature is exact through degree 2n-1") {
  const int n = 12;
  const Grid g(n);
  for (int k = 0; k <= 2 * n - 1; ++k) {
    // integral_{-1}^{1} x^k dx
    const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1.0);
    CHECK_THAT(g.integrate(g.x().pow(k)), WithinAbs(exact, 1e-12));
  }
}

TEST_CASE("theta derivative of cos theta and of constants") {
  const Grid g(16);
  CHECK((g.dtheta(g.x()) + g.sin_theta()).abs().maxCoeff() < 1e-10);
  CHECK((g.diff_matrix() * Eigen::VectorXd::Ones(16)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.dx(g.x().pow(5)) - 5.0 * g.x().pow(4)).abs().maxCoeff() < 1e-10);
}

TEST_CASE("Legendre values and coefficients") {
  const Grid g(20);
  const Field p2 = 0.5 * (3.0 * g.x().square() - 1.0);
  CHECK((g.legendre(2) - p2).abs().maxCoeff() < 1e-14);
  const Eigen::VectorXd a = g.legendre_coefficients(0.3 * g.legendre(1) - 2.0 * g.legendre(4));
  CHECK_THAT(a(1), WithinAbs(0.3, 1e-13));
  CHECK_THAT(a(4), WithinAbs(-2.0, 1e-13));
  CHECK_THAT(a(3), WithinAbs(0.0, 1e-13));
  CHECK_THROWS_AS(g.legendre(21), InvalidParameter);
}

TEST_CASE("antiderivative anchored at the north pole") {
  const Grid g(24);
  // integral_x^1 3 s^2 ds = 1 - x^3
  const Field f = g.antiderivative_from_north(3.0 * g.x().square());
  CHECK((f - (1.0 - g.x().cube())).abs().maxCoeff() < 1e-13);
  // v(theta) = integral_0^theta sin = 1 - cos theta
  CHECK((g.antiderivative_from_north(Field::Ones(24)) - (1.0 - g.x())).abs().maxCoeff() < 1e-13);
}

TEST_CASE("barycentric interpolation reproduces polynomials") {
  const Grid g(10);
  const Field f = g.x().pow(7) - 2.0 * g.x();
  for (double x : {-1.0, -0.3, 0.0, 0.77, 1.0}) {
    CHECK_THAT(g.interpolate(f, x), WithinAbs(std::pow(x, 7) - 2.0 * x, 1e-12));
  }
}

TEST_CASE("fields of the wrong length are rejected") {
  const Grid g(8);
  CHECK_THROWS_AS(g.integrate(Field::Ones(7)), DimensionError);
  CHECK_THROWS_AS(g.dx(Field::Ones(9)), DimensionError);
}

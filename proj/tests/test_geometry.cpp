#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qlm/embedding.hpp"

using namespace qlm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const Field& f) { return f.abs().maxCoeff(); }

Field random_smooth(const Grid& g, std::mt19937_64& rng, int lmax = 6) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f = Field::Zero(g.size());
  for (int l = 0; l <= lmax; ++l) f += u(rng) / (1.0 + l) * g.legendre(l);
  return f;
}
}  // namespace

TEST_CASE("surface integrals of round spheres") {
  const GridPtr g = make_grid(32);
  const AxisymMetric unit = round_sphere(g, 1.0);
  CHECK_THAT(integrate_surface(unit, Field::Ones(32)), WithinAbs(4.0 * kPi, 1e-10));
  CHECK_THAT(integrate_surface(round_sphere(g, 3.0), Field::Ones(32)), WithinAbs(36.0 * kPi, 1e-10));
  CHECK_THAT(integrate_surface(unit, g->x().square()), WithinAbs(4.0 * kPi / 3.0, 1e-10));
  CHECK_THROWS_AS(integrate_surface(unit, Field::Ones(31)), DimensionError);
}

TEST_CASE("metric profiles must be positive") {
  const GridPtr g = make_grid(8);
  Field p = Field::Ones(8);
  p(3) = 0.0;
  CHECK_THROWS_AS(AxisymMetric(g, p, Field::Ones(8)), InvalidParameter);
  CHECK_THROWS_AS(round_sphere(g, -1.0), InvalidParameter);
}

TEST_CASE("Laplacian on round spheres") {
  const GridPtr g = make_grid(32);
  const Field& x = g->x();
  CHECK(max_abs(laplacian(round_sphere(g, 1.0), x) + 2.0 * x) < 1e-9);
  CHECK(max_abs(laplacian(round_sphere(g, 2.5), x) + 2.0 * x / 6.25) < 1e-9);
  CHECK(max_abs(laplacian(round_sphere(g, 1.0), g->legendre(2)) + 6.0 * g->legendre(2)) < 1e-9);
}

TEST_CASE("Laplacian eigenfields up to l = n/2") {
  const GridPtr g = make_grid(32);
  for (double r : {1.0, 0.7, 3.0}) {
    const AxisymMetric m = round_sphere(g, r);
    for (int l = 0; l <= 16; ++l) {
      const Field p = g->legendre(l);
      INFO("r=" << r << " l=" << l);
      CHECK(max_abs(laplacian(m, p) + l * (l + 1.0) * p / (r * r)) < 1e-8);
    }
  }
}

TEST_CASE("gradient norm") {
  const GridPtr g = make_grid(32);
  CHECK(max_abs(gradient_norm_sq(round_sphere(g, 1.0), Field::Constant(32, 4.0))) < 1e-12);
  CHECK(max_abs(gradient_norm_sq(round_sphere(g, 1.0), g->x()) - g->sin_sq()) < 1e-10);
  CHECK(max_abs(gradient_norm_sq(round_sphere(g, 2.0), g->x()) - g->sin_sq() / 4.0) < 1e-10);
}

TEST_CASE("Hessian of the height function on the unit sphere") {
  const GridPtr g = make_grid(32);
  const AxisymMetric m = round_sphere(g, 1.0);
  const Field& x = g->x();
  const SymTensor2 h = hessian(m, x);
  // Hess z = -z sigma: tt = -x, pp = -x sin^2.
  CHECK(max_abs(h.tt + x) < 1e-9);
  CHECK(max_abs(h.pp + x * g->sin_sq()) < 1e-9);
  CHECK(max_abs(h.tp) == 0.0);
  CHECK(max_abs(trace(m, h) - laplacian(m, x)) < 1e-9);
  const SymTensor2 z = hessian(m, Field::Constant(32, 1.5));
  CHECK(max_abs(z.tt) < 1e-12);
  CHECK(max_abs(z.pp) < 1e-12);
}

TEST_CASE("Hessian trace equals the Laplacian for random fields and metrics") {
  const GridPtr g = make_grid(32);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const AxisymMetric m(g, (0.2 * random_smooth(*g, rng, 3)).exp(), (0.2 * random_smooth(*g, rng, 3)).exp());
    const Field f = random_smooth(*g, rng);
    CHECK(max_abs(trace(m, hessian(m, f)) - laplacian(m, f)) < 1e-9);
    const MixedHessian mh = mixed_hessian(m, f);
    CHECK(max_abs(mh.theta + mh.phi - laplacian(m, f)) < 1e-9);
  }
}

TEST_CASE("Laplacian is symmetric under surface integration") {
  const GridPtr g = make_grid(32);
  std::mt19937_64 rng(9);
  const AxisymMetric m(g, (0.2 * random_smooth(*g, rng, 3)).exp(), (0.2 * random_smooth(*g, rng, 3)).exp());
  const Field a = random_smooth(*g, rng);
  const Field b = random_smooth(*g, rng);
  CHECK_THAT(integrate_surface(m, a * laplacian(m, b)), WithinAbs(integrate_surface(m, b * laplacian(m, a)), 1e-10));
  CHECK_THAT(integrate_surface(m, a * laplacian(m, b)),
             WithinAbs(-integrate_surface(m, pair(m, gradient(m, a), gradient(m, b))), 1e-10));
  CHECK_THAT(integrate_surface(m, divergence(m, gradient(m, a))), WithinAbs(0.0, 1e-10));
}

TEST_CASE("Gauss curvature of spheres and of a spheroid") {
  const GridPtr g = make_grid(32);
  CHECK(max_abs(gauss_curvature(round_sphere(g, 1.0)) - 1.0) < 1e-8);
  CHECK(max_abs(gauss_curvature(round_sphere(g, 3.0)) - 1.0 / 9.0) < 1e-8);

  // (sin t, -c cos t): K = c^2 / (cos^2 t + c^2 sin^2 t)^2 by the profile-curve formula.
  const double c = 1.2;
  const AxisymMetric m = spheroid_metric(g, c);
  const Field& x = g->x();
  const Field denom = x.square() + c * c * g->sin_sq();
  const Field k_exact = c * c / denom.square();
  CHECK(max_abs(gauss_curvature(m) - k_exact) < 1e-7);

  // Second path: product of the principal curvatures of the Euclidean embedding.
  const ExtrinsicData e = extrinsic_data(embed_lifted(m, Field::Zero(32)));
  CHECK(max_abs(gauss_curvature(m) - e.k_theta * e.k_phi) < 1e-7);
}

TEST_CASE("Gauss curvature of sigma + dtau dtau") {
  const GridPtr g = make_grid(32);
  const AxisymMetric unit = round_sphere(g, 1.0);
  CHECK(max_abs(hat_gauss_curvature(unit, Field::Zero(32)) - gauss_curvature(unit)) < 1e-10);
  CHECK(max_abs(hat_gauss_curvature(unit, Field::Constant(32, 2.0)) - gauss_curvature(unit)) < 1e-10);

  const Field tau = 0.3 * g->x();
  CHECK(max_abs(hat_gauss_curvature(unit, tau) - gauss_curvature(lifted_metric(unit, tau))) < 1e-7);

  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const AxisymMetric m(g, (0.1 * random_smooth(*g, rng, 3)).exp(), (0.1 * random_smooth(*g, rng, 3)).exp());
    const Field t = 0.2 * random_smooth(*g, rng, 4);
    CHECK(max_abs(hat_gauss_curvature(m, t) - gauss_curvature(lifted_metric(m, t))) < 1e-7);
  }
}

TEST_CASE("determinant convention of the mixed Hessian") {
  // det(sigma^{ac} nabla_c nabla_b tau) = Hess_tt Hess_pp / (P^2 Q^2 sin^2).
  const GridPtr g = make_grid(32);
  const AxisymMetric m = oblate_metric(g, 0.3);
  const Field tau = 0.2 * g->legendre(2) + 0.1 * g->legendre(3);
  const SymTensor2 h = hessian(m, tau);
  const MixedHessian mh = mixed_hessian(m, tau);
  const Field det = h.tt * h.pp / (m.P().square() * m.Q().square() * g->sin_sq());
  CHECK(max_abs(mh.theta * mh.phi - det) < 1e-10);
}

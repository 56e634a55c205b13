#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qlm/verify.hpp"

using namespace qlm;

namespace {
double max_abs(const Field& f) { return f.abs().maxCoeff(); }

/// H0^2 - (v' Lap tau - tau' Lap v)^2 / (v'^2 + tau'^2), with v' and tau'
/// taken by spectral differentiation of v and tau in theta.
Field mean_sq_oracle(const AxisymMetric& m, const Field& tau) {
  const RevolutionSurface r3 = embed_r3(m);
  const Field h0 = extrinsic_data(embed_lifted(m, Field::Zero(m.size()))).Hhat;
  const Field vt = dtheta(m, r3.v);
  const Field tt = dtheta(m, tau);
  const Field num = vt * laplacian(m, tau) - tt * laplacian(m, r3.v);
  return h0.square() - num.square() / (vt.square() + tt.square());
}
}  // namespace

TEST_CASE("round spheres embed as u = r sin, v = r (1 - cos)") {
  const GridPtr g = make_grid(32);
  for (double r : {1.0, 2.0, 0.5}) {
    const RevolutionSurface s = embed_r3(round_sphere(g, r));
    CHECK(max_abs(s.u - r * g->sin_theta()) < 1e-9);
    CHECK(max_abs(s.v - r * (1.0 - g->x())) < 1e-9);
    CHECK(s.isometry_residual() < 1e-9);
    const ExtrinsicData e = extrinsic_data(embed_lifted(round_sphere(g, r), Field::Zero(32)));
    CHECK(max_abs(e.Hhat - 2.0 / r) < 1e-9);
    CHECK(max_abs(*e.norm_H - 2.0 / r) < 1e-9);
  }
}

TEST_CASE("too short meridians are not embeddable") {
  const GridPtr g = make_grid(32);
  const AxisymMetric m(g, Field::Constant(32, 0.1), Field::Ones(32));
  try {
    embed_r3(m);
    FAIL("expected NonEmbeddable");
  } catch (const NonEmbeddable& e) {
    CHECK(e.margin() <= 0.0);
    CHECK(e.node() >= 0);
    CHECK(e.node() < 32);
  }
}

TEST_CASE("lifted embedding for constant and zero tau") {
  const GridPtr g = make_grid(32);
  const AxisymMetric m = oblate_metric(g, 0.3);
  const RevolutionSurface base = embed_r3(m);
  const LorentzSurface z = embed_lifted(m, Field::Zero(32));
  const LorentzSurface c = embed_lifted(m, Field::Constant(32, 7.0));
  CHECK(max_abs(z.projected.v - base.v) < 1e-13);
  CHECK(max_abs(c.projected.v - base.v) < 1e-13);
  CHECK(max_abs(c.projected.metric.P() - m.P()) < 1e-13);
}

TEST_CASE("lifted unit sphere with tau = 0.3 cos") {
  const GridPtr g = make_grid(32);
  const AxisymMetric unit = round_sphere(g, 1.0);
  const LorentzSurface s = embed_lifted(unit, 0.3 * g->x());
  // v~' = sqrt(sin^2 + 0.09 sin^2)
  CHECK(max_abs(s.projected.v_theta() - g->sin_theta() * std::sqrt(1.09)) < 1e-12);
  CHECK(s.minkowski_isometry_residual() < 1e-9);
  CHECK(max_abs(s.projected.v - std::sqrt(1.09) * (1.0 - g->x())) < 1e-9);
}

TEST_CASE("extrinsic data of the unit sphere at tau = 0") {
  const GridPtr g = make_grid(32);
  const ExtrinsicData e = extrinsic_data(embed_lifted(round_sphere(g, 1.0), Field::Zero(32)));
  CHECK(max_abs(e.Hhat - 2.0) < 1e-10);
  CHECK(max_abs(*e.norm_H - 2.0) < 1e-10);
  CHECK(max_abs(e.alpha_H->theta) < 1e-10);
  CHECK(max_abs(e.breve_alpha.theta) < 1e-10);
  CHECK(max_abs(e.breve_h + 2.0) < 1e-10);
  CHECK(max_abs(e.hhat.tt - 1.0) < 1e-10);
  CHECK(max_abs(e.hhat.pp - g->sin_sq()) < 1e-10);
}

TEST_CASE("mean curvature norm agrees with the height-rotation formula") {
  const GridPtr g = make_grid(32);
  const AxisymMetric unit = round_sphere(g, 1.0);
  const Field tau = 0.3 * g->x();
  const ExtrinsicData e = extrinsic_data(embed_lifted(unit, tau));
  CHECK(max_abs(e.mean_sq - mean_sq_oracle(unit, tau)) < 1e-8);

  const Field tau2 = 0.1 * g->legendre(2) - 0.05 * g->legendre(3);
  const AxisymMetric ob = oblate_metric(g, 0.3);
  CHECK(max_abs(extrinsic_data(embed_lifted(ob, tau2)).mean_sq - mean_sq_oracle(ob, tau2)) < 1e-8);
}

TEST_CASE("identities hold on random convex metrics") {
  const GridPtr g = make_grid(32);
  std::mt19937_64 rng(101);
  const auto taus = random_tau_coefficients(20, 3, 0.08, 102);
  for (const auto& c : taus) {
    const AxisymMetric m = random_convex_metric(g, rng);
    const Field tau = c.field(*g);
    if (!(convexity_guard(m, tau) > 0.0)) continue;
    const IdentityDeviations d = identity_deviations(m, tau);
    CHECK(d.mean_curvature_gap < 1e-8);
    CHECK(d.projected_h < 1e-8);
    CHECK(d.hhat_relation < 1e-8);
    CHECK(d.gauge_one_form < 1e-8);
    CHECK(d.boost_component < 1e-8);
    CHECK(d.inverse_metric < 1e-9);
    CHECK(d.raised_gradient < 1e-9);
    CHECK(d.hessian_relation < 1e-8);
    CHECK(d.flux < 1e-8);
    CHECK(d.isometry_euclidean < 1e-9);
    CHECK(d.isometry_minkowski < 1e-9);
    if (!std::isnan(d.alpha_phi)) {
      CHECK(d.alpha_phi <= 1e-10);
      CHECK(d.mean_sq_norm < 1e-8);
    }
  }
}

TEST_CASE("projected gauge: h = sqrt(1 + |grad tau|^2) Hhat, not Hhat / sqrt(...)") {
  // Frozen values at n = 32 for the unit sphere and tau = 0.3 cos.
  const GridPtr g = make_grid(32);
  const IdentityDeviations d = identity_deviations(round_sphere(g, 1.0), 0.3 * g->x());
  CHECK(d.projected_h < 1e-11);
  CHECK(d.projected_h_literal == Catch::Approx(0.1721985621).epsilon(1e-8));
  CHECK(d.hhat_relation < 1e-11);
  CHECK(d.hhat_relation_literal == Catch::Approx(0.003467506521).epsilon(1e-8));
}

TEST_CASE("timelike mean curvature is reported, not hidden") {
  const GridPtr g = make_grid(32);
  const ExtrinsicData e = extrinsic_data(embed_lifted(round_sphere(g, 1.0), 1.0 * g->legendre(2)));
  CHECK_FALSE(e.spacelike());
  CHECK(e.mean_sq.minCoeff() < 0.0);
  CHECK_THROWS_AS(e.require_norm_H(), NonSpacelikeMeanCurvature);
  CHECK_THROWS_AS(e.require_alpha_H(), NonSpacelikeMeanCurvature);
}

TEST_CASE("connection form of the mean curvature gauge") {
  const GridPtr g = make_grid(32);
  const AxisymMetric unit = round_sphere(g, 1.0);
  // A boost-like tilt leaves a round sphere in a spacelike hyperplane: alpha_H = 0.
  const ExtrinsicData tilt = extrinsic_data(embed_lifted(unit, 0.3 * g->x()));
  CHECK(max_abs(tilt.alpha_H->theta) < 1e-10);
  CHECK(max_abs(*tilt.norm_H - 2.0) < 1e-9);
  // A genuinely curved time function produces a nonzero, divergence-carrying alpha_H.
  const ExtrinsicData e = extrinsic_data(embed_lifted(unit, 0.2 * g->legendre(2)));
  CHECK(max_abs(e.alpha_H->theta) > 1e-3);
  CHECK(max_abs(*e.alpha_H_phi) == 0.0);
}

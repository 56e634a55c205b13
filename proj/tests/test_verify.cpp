#include <catch_amalgamated.hpp>

#include <cmath>

#include "qlm/report.hpp"

using namespace qlm;

namespace {
std::vector<Field> fields(const std::vector<TauCoefficients>& cs, const Grid& g) {
  std::vector<Field> out;
  for (const auto& c : cs) out.push_back(c.field(g));
  return out;
}
}  // namespace

TEST_CASE("report pass follows the least-slack check") {
  TheoremReport r;
  r.add("a", 0.5, 0.0);
  CHECK(r.pass);
  r.add_deviation("b", 2e-9, 1e-8);
  CHECK(r.pass);
  CHECK(r.worst_check == "b");
  r.add("strict", 1e-13, -1e-12);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_check == "strict");
  CHECK(r.pass == (r.worst_margin >= -r.tolerance));
  r.add_deviation("nan", std::nan(""), 1.0);
  CHECK_FALSE(r.find("nan")->pass());
}

TEST_CASE("identity suite on the unit sphere and an oblate metric") {
  const GridPtr g = make_grid(32);
  const TheoremReport a = check_identities(round_sphere(g, 1.0), Field::Zero(32), 1e-10);
  CHECK(a.pass);
  const TheoremReport b = check_identities(round_sphere(g, 1.0), 0.3 * g->x(), 1e-8);
  CHECK(b.pass);
  const TheoremReport c = check_identities(oblate_metric(g, 0.3), 0.1 * g->legendre(2), 1e-7);
  CHECK(c.pass);
  CHECK(c.find("mean_curvature_identity") != nullptr);
}

TEST_CASE("identity suite without a Euclidean embedding") {
  // Q = 1, P = exp(-0.7 sin^2): near the poles P < |u_theta|, so sigma has no
  // Euclidean embedding, while the lift by tau = cos(theta) restores one.
  const GridPtr g = make_grid(32);
  const AxisymMetric m(g, (-0.7 * g->sin_sq()).exp(), Field::Ones(32));
  CHECK_THROWS_AS(embed_r3(m), NonEmbeddable);
  const Field tau = g->x();
  const TheoremReport r = check_identities(m, tau);
  CHECK(r.find("mean_curvature_identity") == nullptr);
  CHECK_FALSE(r.notes.empty());
  CHECK(r.pass);
}

TEST_CASE("projected gauge suite: tau is critical for the gauge energy") {
  const GridPtr g = make_grid(32);
  const std::vector<Field> vars{g->legendre(1), g->legendre(2), g->legendre(3)};
  const AxisymMetric unit = round_sphere(g, 1.0);
  const TheoremReport z = check_lemma41(unit, Field::Zero(32), vars);
  CHECK(z.pass);
  const TheoremReport a = check_lemma41(unit, 0.3 * g->x(), vars);
  CHECK(a.pass);
  const TheoremReport b = check_lemma41(unit, 0.2 * g->legendre(1) + 0.1 * g->legendre(3), vars);
  CHECK(b.pass);
  CHECK(-b.find("flux_identity")->margin <= 1e-8);
}

TEST_CASE("reference comparison suite on Schwarzschild data") {
  const GridPtr g = make_grid(32);
  const PhysicalData d = schwarzschild_sphere(g, 1.0, 4.0);
  const TheoremReport r = check_theorem1(d, Field::Zero(32), fields(coefficient_box({0.05, 0.2, 0.5}), *g));
  CHECK(r.pass);
  CHECK(r.samples == 36);
  REQUIRE(r.equality_cases.size() == 2);
  for (const auto& e : r.equality_cases) CHECK(std::abs(e.gap) <= 1e-9);
  CHECK(r.find("gap")->margin >= -1e-8);
  CHECK(r.find("strict_gap_nonconstant")->margin > 0.0);
  // |H_tau0| = H0 = 0.5 > |H| = 0.3536
  CHECK(r.find("hypothesis_reference_mean_curvature_dominates")->margin == Catch::Approx(0.5 - 0.3535533905932738));
}

TEST_CASE("reference comparison suite flags a non-critical tau0") {
  const GridPtr g = make_grid(32);
  const PhysicalData d = schwarzschild_sphere(g, 1.0, 4.0);
  const TheoremReport r = check_theorem1(d, 0.1 * g->legendre(2), {0.1 * g->legendre(2) + 0.05 * g->x()});
  CHECK_FALSE(r.find("hypothesis_tau0_critical")->pass());
  CHECK_FALSE(r.pass);
}

TEST_CASE("minimality suite") {
  const GridPtr g = make_grid(32);
  const PhysicalData d = schwarzschild_sphere(g, 1.0, 4.0);
  const TheoremReport r = check_theorem3(d, {0.3 * g->x()});
  CHECK(r.pass);
  CHECK(r.find("energy_gap")->margin > 0.0);
  CHECK(r.find("ode_margin")->margin >= -1e-7);

  const TheoremReport z = check_theorem3(d, {Field::Zero(32)});
  CHECK(z.pass);
  CHECK(std::abs(z.find("ode_margin")->margin) < 1e-10);

  const TheoremReport flat = check_theorem3(schwarzschild_sphere(g, 0.0, 1.0), {0.3 * g->x()});
  CHECK_FALSE(flat.pass);
  CHECK_FALSE(flat.find("hypothesis_H0_exceeds_norm_H")->pass());
}

TEST_CASE("reports serialize deterministically") {
  const GridPtr g = make_grid(16);
  const auto run = [&] {
    Json j = report_header("verify", 16, 42);
    j["report"] = to_json(check_identities(round_sphere(g, 1.0), 0.3 * g->x()));
    return j.dump(2);
  };
  const std::string a = run();
  CHECK(a == run());
  const Json parsed = Json::parse(a);
  CHECK(parsed["version"] == kVersion);
  CHECK(parsed["grid_n"] == 16);
  CHECK(parsed["seed"] == 42);
  CHECK(parsed["report"]["pass"] == true);
}

TEST_CASE("random samplers are seeded") {
  const auto a = random_tau_coefficients(3, 4, 0.1, 9);
  const auto b = random_tau_coefficients(3, 4, 0.1, 9);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].coeffs == b[k].coeffs);
  CHECK(coefficient_box({0.05, 0.2, 0.5}).size() == 36);
}

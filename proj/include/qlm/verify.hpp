#pragma once

// Numerical certification of the comparison inequalities and the supporting
// identities over sampled time functions.
//
// Every report is a list of checks. A check passes when its margin is at
// least -tolerance; deviations enter with margin = -deviation, one-sided
// inequalities with margin = the quantity itself. Strict hypotheses use a
// negative tolerance (the margin must exceed |tolerance|). The report's
// worst_margin/tolerance are those of the check with the least slack, so
// pass <=> worst_margin >= -tolerance.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qlm/chebyshev.hpp"
#include "qlm/optimize.hpp"

namespace qlm {

struct Check {
  std::string name;
  double margin;
  double tolerance;
  bool pass() const { return margin >= -tolerance; }
  double slack() const { return margin + tolerance; }
};

struct EqualityCase {
  std::string label;
  double gap;
};

struct TheoremReport {
  std::string name;
  int samples = 0;
  int skipped = 0;  ///< samples rejected by the convexity guard
  double worst_margin = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  std::string worst_check;
  std::vector<Check> checks;
  std::vector<EqualityCase> equality_cases;
  std::vector<std::pair<std::string, double>> values;  ///< informational quantities
  std::vector<std::string> notes;
  bool pass = true;

  void add(std::string check_name, double margin, double tol) {
    if (!std::isfinite(margin)) margin = -std::numeric_limits<double>::infinity();
    checks.push_back({std::move(check_name), margin, tol});
    const Check& c = checks.back();
    if (worst_check.empty() || c.slack() < worst_margin + tolerance) {
      worst_margin = c.margin;
      tolerance = c.tolerance;
      worst_check = c.name;
    }
    pass = worst_margin >= -tolerance;
  }
  void add_deviation(std::string check_name, double deviation, double tol) {
    add(std::move(check_name), std::isfinite(deviation) ? -std::abs(deviation) : deviation, tol);
  }
  void value(std::string key, double v) { values.emplace_back(std::move(key), v); }

  const Check* find(const std::string& check_name) const {
    for (const Check& c : checks) {
      if (c.name == check_name) return &c;
    }
    return nullptr;
  }
};

/// Tolerances of the suites; the defaults are those quoted for n = 32.
struct VerifyTolerances {
  double critical_residual = 1e-6;
  double gap = 1e-8;
  double equality = 1e-9;
  double closed_form = 1e-7;
  double strict = 1e-12;
  double f_zero = 1e-10;
  double f_prime_zero = 1e-7;
  double ode = 1e-7;
  double g_prime = 1e-6;
  double alpha_zero = 1e-10;
  double flux = 1e-8;
  double variation = 1e-6;
  double identity = 1e-8;
  double isometry = 1e-9;
};

// --- sampling ----------------------------------------------------------------

/// tau = sum_{l=1}^{lmax} c_l P_l with c_l uniform in [-scale, scale].
inline std::vector<TauCoefficients> random_tau_coefficients(int count, int lmax, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<TauCoefficients> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::vector<double> c(lmax);
    for (double& v : c) v = u(rng);
    out.emplace_back(std::move(c));
  }
  return out;
}

/// {a P_1 + b P_2 : a, b in +-values}.
inline std::vector<TauCoefficients> coefficient_box(const std::vector<double>& magnitudes) {
  std::vector<double> vals;
  for (double v : magnitudes) {
    vals.push_back(v);
    vals.push_back(-v);
  }
  std::vector<TauCoefficients> out;
  for (double a : vals) {
    for (double b : vals) out.push_back(TauCoefficients({a, b}));
  }
  return out;
}

/// Q = exp(q), P = Q exp(sin^2(theta) p) with p, q random Legendre
/// combinations (l = 1..3, amplitude `scale`). P = Q at the poles keeps the
/// metric free of cone points. Redrawn until sigma is convex and embeddable.
inline AxisymMetric random_convex_metric(const GridPtr& grid, std::mt19937_64& rng, double scale = 0.02) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::vector<double> pc{u(rng), u(rng), u(rng)};
    const std::vector<double> qc{u(rng), u(rng), u(rng)};
    const Field q = legendre_series(*grid, qc, true).exp();
    const Field p = q * (grid->sin_sq() * legendre_series(*grid, pc, true)).exp();
    AxisymMetric m(grid, p, q);
    if (gauss_curvature(m).minCoeff() <= 0.0) continue;
    try {
      embed_r3(m);
    } catch (const NonEmbeddable&) {
      continue;
    }
    return m;
  }
  throw InvalidParameter("could not draw a convex embeddable metric");
}

// --- identity suite ----------------------------------------------------------

/// Pointwise identities of Sigma_tau, one named deviation (max norm) each.
struct IdentityDeviations {
  double mean_curvature_gap = std::numeric_limits<double>::quiet_NaN();  ///< NaN when sigma has no Euclidean embedding
  double projected_h = 0.0;          ///< h(breve e3, tau) - sqrt(1+|grad tau|^2) Hhat
  double projected_h_literal = 0.0;  ///< h(breve e3, tau) sqrt(1+|grad tau|^2) - Hhat
  double hhat_relation = 0.0;   ///< Hhat + breve_h + breve_alpha(grad tau)/sqrt(1+|grad tau|^2)
  double hhat_relation_literal = 0.0;  ///< same with 1/(1+|grad tau|^2)
  double gauge_one_form = 0.0;  ///< breve_alpha - hhat(grad tau, .)/sqrt(1+|grad tau|^2), orthonormal
  double boost_component = 0.0;  ///< <H, breve e4> + Lap tau / sqrt(1+|grad tau|^2)
  double inverse_metric = 0.0;  ///< sigma^^{-1} vs sigma^{-1} - tau tau / (1+|grad tau|^2)
  double raised_gradient = 0.0;  ///< sigma^^{ab} d_a tau vs tau^b / (1+|grad tau|^2)
  double hessian_relation = 0.0;  ///< hat Hess tau vs Hess tau / (1+|grad tau|^2)
  double flux = 0.0;            ///< flux identity of the projected gauge, orthonormal component
  double isometry_euclidean = std::numeric_limits<double>::quiet_NaN();
  double isometry_minkowski = 0.0;
  double alpha_phi = std::numeric_limits<double>::quiet_NaN();
  double mean_sq_norm = std::numeric_limits<double>::quiet_NaN();  ///< mean_sq - norm_H^2
};

inline IdentityDeviations identity_deviations(const AxisymMetric& m, const Field& tau) {
  const Grid& g = m.grid();
  const LorentzSurface s = embed_lifted(m, tau);
  const ExtrinsicData e = extrinsic_data(s);
  const Field& P = m.P();
  const Field& Phat = s.projected.metric.P();
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const Field root = lift.sqrt();
  const Field t_t = dtheta(m, tau);
  const OneForm grad = gradient(m, tau);
  const Field alpha_grad = pair(m, e.breve_alpha, grad);

  IdentityDeviations dev;
  const auto max_abs = [](const Field& f) { return f.abs().maxCoeff(); };
  {
    const Field h = -root * e.breve_h - alpha_grad;
    dev.projected_h = max_abs(h - root * e.Hhat);
    dev.projected_h_literal = max_abs(h * root - e.Hhat);
    dev.hhat_relation = max_abs(e.Hhat + e.breve_h + alpha_grad / root);
    dev.hhat_relation_literal = max_abs(e.Hhat + e.breve_h + alpha_grad / lift);
    // hhat(grad tau)_theta = hhat_tt tau^theta.
    const Field tau_up = t_t / (P * P);
    dev.gauge_one_form = max_abs((e.breve_alpha.theta - e.hhat.tt * tau_up / root) / P);
    dev.boost_component = max_abs(e.breve_h4 + e.lap_tau / root);
    dev.inverse_metric = max_abs(P * P * (1.0 / (Phat * Phat) - (1.0 / (P * P) - tau_up * tau_up / lift)));
    dev.raised_gradient = max_abs(P * (t_t / (Phat * Phat) - tau_up / lift));
    const SymTensor2 hess = hessian(m, tau);
    const SymTensor2 hess_hat = hessian(s.projected.metric, tau);
    const Field u = m.u();
    dev.hessian_relation = std::max(max_abs((hess_hat.tt - hess.tt / lift) / (Phat * P)),
                                    max_abs(g.sin_sq() * (hess_hat.pp - hess.pp / lift) / (u * u)));
    const Field flux = -(e.hhat.tt / (Phat * Phat)) * tau_up / root - tau_up * alpha_grad / lift +
                       e.breve_alpha.theta / (P * P);
    dev.flux = max_abs(P * flux);
    dev.isometry_minkowski = s.minkowski_isometry_residual();
    if (e.spacelike()) {
      dev.alpha_phi = max_abs(*e.alpha_H_phi);
      dev.mean_sq_norm = max_abs(e.mean_sq - e.norm_H->square());
    }
    try {
      const RevolutionSurface r3 = embed_r3(m);
      dev.isometry_euclidean = r3.isometry_residual();
      const ExtrinsicData e0 = extrinsic_data(embed_lifted(m, Field::Zero(m.size())));
      const Field h0 = e0.Hhat;
      // (v' Lap tau - tau' Lap v)^2 / (v'^2 + tau'^2), divided through by sin^2.
      const Field tx = g.dx(tau);
      const Field lap_v = laplacian(m, r3.v);
      const Field num = r3.v_rate * e.lap_tau + tx * lap_v;
      const Field gap = num * num / (r3.v_rate * r3.v_rate + tx * tx);
      dev.mean_curvature_gap = max_abs(e.mean_sq - (h0 * h0 - gap));
    } catch (const NonEmbeddable&) {
    }
  }
  return dev;
}

inline TheoremReport check_identities(const AxisymMetric& m, const Field& tau, double tol = 1e-8,
                                      double isometry_tol = 1e-9) {
  TheoremReport r;
  r.name = "identities";
  r.samples = 1;
  const IdentityDeviations d = identity_deviations(m, tau);
  if (std::isnan(d.mean_curvature_gap)) {
    r.notes.push_back("sigma has no Euclidean embedding; mean-curvature identity skipped");
  } else {
    r.add_deviation("mean_curvature_identity", d.mean_curvature_gap, tol);
    r.add_deviation("isometry_euclidean", d.isometry_euclidean, isometry_tol);
  }
  r.add_deviation("isometry_minkowski", d.isometry_minkowski, isometry_tol);
  r.add_deviation("generalized_mean_curvature", d.projected_h, tol);
  r.add_deviation("projection_relation", d.hhat_relation, tol);
  r.add_deviation("gauge_one_form", d.gauge_one_form, tol);
  r.add_deviation("boost_component", d.boost_component, tol);
  r.add_deviation("inverse_metric", d.inverse_metric, isometry_tol);
  r.add_deviation("raised_gradient", d.raised_gradient, isometry_tol);
  r.add_deviation("hessian_relation", d.hessian_relation, tol);
  r.add_deviation("flux_identity", d.flux, tol);
  if (std::isnan(d.alpha_phi)) {
    r.notes.push_back("mean curvature vector not spacelike; alpha_H checks skipped");
  } else {
    r.add_deviation("alpha_H_phi", d.alpha_phi, 1e-10);
    r.add_deviation("mean_sq_vs_norm", d.mean_sq_norm, tol);
  }
  r.value("generalized_mean_curvature_literal_form", d.projected_h_literal);
  r.value("projection_relation_literal_form", d.hhat_relation_literal);
  return r;
}

// --- tau is critical for the breve e3 gauge energy ---------------------------

inline TheoremReport check_lemma41(const AxisymMetric& m, const Field& tau, const std::vector<Field>& variations,
                                   double step = 1e-4, const VerifyTolerances& tol = {}) {
  TheoremReport r;
  r.name = "lemma41";
  r.samples = static_cast<int>(variations.size());
  const IdentityDeviations d = identity_deviations(m, tau);
  r.add_deviation("flux_identity", d.flux, tol.flux);
  const GaugeData gauge = breve_gauge(extrinsic_data(embed_lifted(m, tau)));
  r.value("tilde_energy_at_tau", tilde_energy(m, gauge, tau));
  for (std::size_t k = 0; k < variations.size(); ++k) {
    m.check(variations[k]);
    const double plus = tilde_energy(m, gauge, tau + step * variations[k]);
    const double minus = tilde_energy(m, gauge, tau - step * variations[k]);
    const double derivative = (plus - minus) / (2.0 * step);
    r.add_deviation("first_variation_" + std::to_string(k + 1), derivative, tol.variation);
  }
  return r;
}

// --- comparison with a reference critical point ------------------------------

inline TheoremReport check_theorem1(const PhysicalData& d, const Field& tau0, const std::vector<Field>& samples,
                                    const VerifyTolerances& tol = {}) {
  const AxisymMetric& m = d.metric;
  TheoremReport r;
  r.name = "theorem1";
  r.samples = static_cast<int>(samples.size());

  const double rn = residual_norm(d, tau0);
  r.value("critical_residual_norm", rn);
  r.add_deviation("hypothesis_tau0_critical", rn, tol.critical_residual);

  const PhysicalData ref = minkowski_surface_data(m, tau0);
  const double h_margin = (ref.norm_H - d.norm_H).minCoeff();
  r.value("min_reference_minus_physical_norm_H", h_margin);
  r.add("hypothesis_reference_mean_curvature_dominates", h_margin, -tol.strict);
  if (!(h_margin > tol.strict)) r.notes.push_back("hypothesis |H_tau0| > |H| fails");

  const double e_tau0 = qle(d, tau0).total;
  const double closed = critical_energy_closed_form(d, ref, tau0);
  r.value("energy_at_tau0", e_tau0);
  r.value("energy_at_tau0_closed_form", closed);
  r.add_deviation("closed_form_energy", e_tau0 - closed, tol.closed_form);

  double worst = std::numeric_limits<double>::infinity();
  double strict = std::numeric_limits<double>::infinity();
  int evaluated = 0;
  for (const Field& tau : samples) {
    m.check(tau);
    if (!(convexity_guard(m, tau) > 0.0)) {
      ++r.skipped;
      continue;
    }
    const double gap = qle(d, tau).total - e_tau0 - qle(ref, tau).total;
    worst = std::min(worst, gap);
    // Constant offsets from tau0 are the equality cases, so a sample is
    // nonconstant when tau - tau0 has a gradient.
    if (gradient_norm_sq(m, tau - tau0).maxCoeff() > 1e-20) strict = std::min(strict, gap);
    ++evaluated;
  }
  if (evaluated > 0) {
    r.add("gap", worst, tol.gap);
    r.value("worst_gap", worst);
  } else {
    r.notes.push_back("no sample passed the convexity guard");
  }
  if (std::isfinite(strict)) r.add("strict_gap_nonconstant", strict, -tol.strict);

  for (const auto& [label, c] : {std::pair<std::string, double>{"tau0+3", 3.0}, {"tau0-1.5", -1.5}}) {
    const Field tau = tau0 + c;
    const double gap = qle(d, tau).total - e_tau0 - qle(ref, tau).total;
    r.equality_cases.push_back({label, gap});
    r.add_deviation("equality_" + label, gap, tol.equality);
  }
  return r;
}

// --- energy minimized at tau = 0 -----------------------------------------------

struct Theorem3Options {
  int s_points = 33;
  double s_min = 0.02;
  int fine_points = 200;  ///< extra s samples (interpolated) for the ODE margin
  VerifyTolerances tol{};
};

inline TheoremReport check_theorem3(const PhysicalData& d, const std::vector<Field>& samples,
                                    const Theorem3Options& opts = {}) {
  const AxisymMetric& m = d.metric;
  const VerifyTolerances& tol = opts.tol;
  const Field zero = Field::Zero(m.size());
  TheoremReport r;
  r.name = "theorem3";
  r.samples = static_cast<int>(samples.size());

  // Hypotheses.
  const double alpha_max = d.alpha_H.theta.abs().maxCoeff();
  r.value("max_abs_alpha_H", alpha_max);
  r.add_deviation("hypothesis_alpha_H_zero", alpha_max, tol.alpha_zero);
  const double k_min = gauss_curvature(m).minCoeff();
  r.value("min_gauss_curvature", k_min);
  r.add("hypothesis_positive_gauss_curvature", k_min, -tol.strict);
  const PhysicalData flat = minkowski_surface_data(m, zero);  // Sigma_0 with H_0 and alpha = 0
  const double h_gap = (flat.norm_H - d.norm_H).minCoeff();
  r.value("min_H0_minus_norm_H", h_gap);
  r.value("min_norm_H", d.norm_H.minCoeff());
  r.add("hypothesis_H0_exceeds_norm_H", h_gap, -tol.strict);
  r.add("hypothesis_norm_H_positive", d.norm_H.minCoeff(), -tol.strict);
  if (!(h_gap > tol.strict)) r.notes.push_back("hypothesis H0 > |H| fails");

  const double e0 = qle(d, zero).total;
  r.value("energy_at_zero", e0);

  const ChebyshevGrid sg(opts.s_points, 0.0, 1.0);
  const Eigen::ArrayXd& sv = sg.points();
  double f0 = 0.0, fp0 = 0.0, ode = std::numeric_limits<double>::infinity(), gp = 0.0, h_dom = std::numeric_limits<double>::infinity();
  double energy_gap = std::numeric_limits<double>::infinity();
  int evaluated = 0;

  for (const Field& tau : samples) {
    m.check(tau);
    double guard = std::numeric_limits<double>::infinity();
    for (int k = 0; k < sg.size(); ++k) guard = std::min(guard, convexity_guard(m, sv(k) * tau));
    if (!(guard > 0.0)) {
      ++r.skipped;
      continue;
    }
    ++evaluated;
    Eigen::ArrayXd F(sg.size()), G(sg.size()), Gc(sg.size());
    for (int k = 0; k < sg.size(); ++k) {
      const double s = sv(k);
      const Field st = s * tau;
      const LorentzSurface surf = embed_lifted(m, st);
      const ExtrinsicData e = extrinsic_data(surf);
      G(k) = reference_term(surf, e);
      F(k) = G(k) - integrate_surface(m, physical_density(flat, st));
      h_dom = std::min(h_dom, (flat.norm_H.square() - e.mean_sq).minCoeff());
      if (s >= opts.s_min) {
        const Field lift = 1.0 + gradient_norm_sq(m, st);
        const Field x2 = e.lap_tau.square() / lift;
        Gc(k) = (G(k) - integrate_surface(m, (e.mean_sq + x2).sqrt() / lift.sqrt())) / s;
      }
    }
    const Eigen::ArrayXd Fp = sg.differentiate(F);
    const Eigen::ArrayXd Gp = sg.differentiate(G);
    f0 = std::max(f0, std::abs(F(0)));
    fp0 = std::max(fp0, std::abs(Fp(0)));
    for (int k = 0; k < sg.size(); ++k) {
      if (sv(k) < opts.s_min) continue;
      ode = std::min(ode, Fp(k) - F(k) / sv(k));
      gp = std::max(gp, std::abs(Gp(k) - Gc(k)));
    }
    for (int j = 0; j <= opts.fine_points; ++j) {
      const double s = opts.s_min + (1.0 - opts.s_min) * j / opts.fine_points;
      ode = std::min(ode, sg.interpolate(Fp, s) - sg.interpolate(F, s) / s);
    }
    energy_gap = std::min(energy_gap, qle(d, tau).total - e0);
  }

  if (evaluated == 0) {
    r.notes.push_back("no sample passed the convexity guard along s in [0, 1]");
    r.add("samples_evaluated", 0.0, -0.5);
    return r;
  }
  r.value("max_abs_F0", f0);
  r.value("max_abs_F_prime0", fp0);
  r.value("min_ode_margin", ode);
  r.value("max_G_prime_deviation", gp);
  r.value("min_energy_gap", energy_gap);
  r.value("min_H0_sq_minus_mean_sq", h_dom);
  r.add_deviation("F_at_zero", f0, tol.f_zero);
  r.add_deviation("F_prime_at_zero", fp0, tol.f_prime_zero);
  r.add("ode_margin", ode, tol.ode);
  r.add("energy_gap", energy_gap, tol.gap);
  r.add_deviation("G_prime_closed_form", gp, tol.g_prime);
  r.add("mean_curvature_domination", h_dom, tol.gap);
  return r;
}

}  // namespace qlm

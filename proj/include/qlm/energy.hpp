#pragma once

// Quasi-local energy of axisymmetric physical data with respect to the
// isometric embedding into Minkowski space with time function tau:
//
//   E(tau) = int_{hat Sigma} Hhat dv^ - int_Sigma [ sqrt((1+|grad tau|^2)|H|^2 + (Lap tau)^2)
//            - Lap tau * asinh(Lap tau / (|H| sqrt(1+|grad tau|^2))) - alpha_H(grad tau) ] dv
//
// (the boost-angle term integrated by parts). No 1/(8 pi) normalization.

#include <cmath>
#include <numbers>

#include "qlm/physdata.hpp"

namespace qlm {

/// Sign s in dE/de(tau + e eta)|_0 = s * int residual * eta dv. Calibrated
/// by central differences (see the energy tests).
inline constexpr double kResidualGradientSign = 1.0;

struct EnergyBreakdown {
  double reference_term = 0.0;
  double physical_term = 0.0;
  double total = 0.0;
};

/// Gauge of a spacelike unit normal e3: <H, e3> and the connection form alpha_{e3}.
struct GaugeData {
  Field inner_h;
  OneForm alpha;
};

/// int_{hat Sigma} Hhat dv^, with dv^ = Phat Q sin d(theta) d(phi).
inline double reference_term(const LorentzSurface& s, const ExtrinsicData& e) {
  const AxisymMetric& hat = s.projected.metric;
  return 2.0 * std::numbers::pi * hat.grid().integrate(e.Hhat * hat.P() * hat.Q());
}

inline double reference_term(const AxisymMetric& m, const Field& tau) {
  const LorentzSurface s = embed_lifted(m, tau);
  return reference_term(s, extrinsic_data(s));
}

/// sinh of the boost angle, -Lap tau / (|H| sqrt(1 + |grad tau|^2)).
inline Field boost_sinh(const PhysicalData& d, const Field& tau) {
  return -laplacian(d.metric, tau) / (d.norm_H * (1.0 + gradient_norm_sq(d.metric, tau)).sqrt());
}

/// Integrand of the physical term in integrated-by-parts form.
inline Field physical_density(const PhysicalData& d, const Field& tau) {
  const AxisymMetric& m = d.metric;
  const Field lap = laplacian(m, tau);
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const Field arg = lap / (d.norm_H * lift.sqrt());
  const Field asinh_arg = arg.unaryExpr([](double v) { return std::asinh(v); });
  return (lift * d.norm_H.square() + lap.square()).sqrt() - lap * asinh_arg -
         pair(m, d.alpha_H, gradient(m, tau));
}

inline EnergyBreakdown qle(const PhysicalData& d, const Field& tau) {
  d.metric.check(tau);
  d.validate();
  EnergyBreakdown b;
  b.reference_term = reference_term(d.metric, tau);
  b.physical_term = integrate_surface(d.metric, physical_density(d, tau));
  b.total = b.reference_term - b.physical_term;
  return b;
}

/// Total energy with the boost-angle term kept as -grad tau . grad(theta)
/// and cosh(theta) formed from the angle itself.
inline double qle_literal(const PhysicalData& d, const Field& tau) {
  const AxisymMetric& m = d.metric;
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const Field angle = boost_sinh(d, tau).unaryExpr([](double v) { return std::asinh(v); });
  const Field density = lift.sqrt() * angle.cosh() * d.norm_H - pair(m, gradient(m, tau), gradient(m, angle)) -
                        pair(m, d.alpha_H, gradient(m, tau));
  return reference_term(m, tau) - integrate_surface(m, density);
}

/// Gauge of breve e3, the outward normal of the projection translated along T0.
inline GaugeData breve_gauge(const ExtrinsicData& e) { return {e.breve_h, e.breve_alpha}; }

/// Gauge e3^can(f) for physical data: the boost of e3 = -H/|H| by the angle
/// psi with sinh(psi) = Lap f / (|H| sqrt(1 + |grad f|^2)), so that
/// <H, e3^can> = -|H| cosh(psi) and alpha_{e3^can} = alpha_H - d(psi).
inline GaugeData canonical_gauge(const PhysicalData& d, const Field& f) {
  const Field sh = -boost_sinh(d, f);
  const Field psi = sh.unaryExpr([](double v) { return std::asinh(v); });
  return {-d.norm_H * (1.0 + sh.square()).sqrt(), OneForm{d.alpha_H.theta - dtheta(d.metric, psi)}};
}

/// h(Sigma, i, f, e3) = -sqrt(1 + |grad f|^2) <H, e3> - alpha_{e3}(grad f).
inline Field generalized_mean_curvature(const GaugeData& g, const AxisymMetric& m, const Field& f) {
  m.check(g.inner_h);
  return -(1.0 + gradient_norm_sq(m, f)).sqrt() * g.inner_h - pair(m, g.alpha, gradient(m, f));
}

/// Gauge energy: int_{hat Sigma_f} Hhat_f dv^ - int_Sigma h(Sigma, i, f, e3) dv.
inline double tilde_energy(const AxisymMetric& m, const GaugeData& g, const Field& f) {
  return reference_term(m, f) - integrate_surface(m, generalized_mean_curvature(g, m, f));
}

/// Pointwise left-hand side of the optimal embedding equation
///   -(Hhat sigma^^{ab} - sigma^^{ac} sigma^^{bd} hhat_cd) nabla_b nabla_a tau / sqrt(1+|grad tau|^2)
///   + div(grad tau cosh(theta)|H| / sqrt(1+|grad tau|^2) - grad theta - alpha_H).
inline Field residual(const PhysicalData& d, const Field& tau) {
  const AxisymMetric& m = d.metric;
  const Grid& g = m.grid();
  d.validate();
  const LorentzSurface s = embed_lifted(m, tau);
  const ExtrinsicData e = extrinsic_data(s);
  const Field& Phat = s.projected.metric.P();
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const SymTensor2 hess = hessian(m, tau);
  const MixedHessian mixed = mixed_hessian(m, tau);
  // (Hhat sigma^^ - sigma^^ hhat sigma^^) is diagonal with entries k_phi / Phat^2 and k_theta / u^2.
  const Field curvature_term = e.k_phi * hess.tt / (Phat * Phat) + e.k_theta * mixed.phi;

  const Field lap = laplacian(m, tau);
  const Field angle = boost_sinh(d, tau).unaryExpr([](double v) { return std::asinh(v); });
  const Field cosh_h = (lift * d.norm_H.square() + lap.square()).sqrt() / lift;  // cosh(theta)|H| / sqrt(lift)
  const OneForm flux{cosh_h * dtheta(m, tau) - g.dtheta(angle) - d.alpha_H.theta};
  return -curvature_term / lift.sqrt() + divergence(m, flux);
}

/// Closed-form value of E(Sigma, tau0) at a common critical point tau0 of
/// E(Sigma, .) and E(Sigma_tau0, .), with x0 = Lap tau0 / sqrt(1 + |grad tau0|^2):
///   int (1/sqrt(1+|grad tau0|^2)) [sqrt(|H_tau0|^2 + x0^2) - sqrt(|H|^2 + x0^2)] dv.
inline double critical_energy_closed_form(const PhysicalData& d, const PhysicalData& reference, const Field& tau0) {
  const AxisymMetric& m = d.metric;
  const Field lift = (1.0 + gradient_norm_sq(m, tau0)).sqrt();
  const Field x0 = laplacian(m, tau0) / lift;
  const Field density = ((reference.norm_H.square() + x0.square()).sqrt() - (d.norm_H.square() + x0.square()).sqrt()) / lift;
  return integrate_surface(m, density);
}

// --- scalar comparison function ---------------------------------------------

namespace detail {
inline void check_curvatures(double h_big, double h_small) {
  if (!(h_big > 0.0) || !(h_small > 0.0)) throw InvalidParameter("mean curvature arguments must be positive");
}
}  // namespace detail

/// f(x) = sqrt(Hb^2 + x^2) - sqrt(Hs^2 + x^2)
///        - x [asinh(x/Hb) - asinh(x/Hs) - asinh(x0/Hb) + asinh(x0/Hs)].
inline double comparison_f(double x, double x0, double h_big, double h_small) {
  detail::check_curvatures(h_big, h_small);
  return std::hypot(h_big, x) - std::hypot(h_small, x) -
         x * (std::asinh(x / h_big) - std::asinh(x / h_small) - std::asinh(x0 / h_big) + std::asinh(x0 / h_small));
}

inline double comparison_f_prime(double x, double x0, double h_big, double h_small) {
  detail::check_curvatures(h_big, h_small);
  return std::asinh(x / h_small) - std::asinh(x / h_big) + std::asinh(x0 / h_big) - std::asinh(x0 / h_small);
}

}  // namespace qlm

#pragma once

// Closed-form isometric embeddings of axisymmetric metrics.
//
// Euclidean:  X0 = (u sin phi, u cos phi, v),        u = Q sin(theta), v_theta = sqrt(P^2 - u_theta^2)
// Minkowski:  X  = (tau, u sin phi, u cos phi, v~),  v~_theta = sqrt(P^2 + tau_theta^2 - u_theta^2)
//
// Heights are anchored at the north pole, v(theta = 0) = 0, and carried as
// the rate v_theta / sin(theta), which is smooth in x for regular surfaces.

#include <cmath>
#include <optional>

#include "qlm/geometry.hpp"

namespace qlm {

struct RevolutionSurface {
  AxisymMetric metric;  ///< induced metric of the surface
  Field u;              ///< cylindrical radius
  Field v;              ///< height, v = 0 at the north pole
  Field u_theta;
  Field v_rate;  ///< v_theta / sin(theta)

  Field v_theta() const { return metric.grid().sin_theta() * v_rate; }

  /// max |u_theta^2 + v_theta^2 - P^2| and max |u^2 - Q^2 sin^2|.
  double isometry_residual() const {
    const Grid& g = metric.grid();
    const Field vt = v_theta();
    const double meridian = (u_theta * u_theta + vt * vt - metric.P() * metric.P()).abs().maxCoeff();
    const Field qs = metric.Q() * g.sin_theta();
    const double parallel = (u * u - qs * qs).abs().maxCoeff();
    return std::max(meridian, parallel);
  }
};

namespace detail {

/// (P^2 - u_theta^2) / sin^2 at every node; throws NonEmbeddable where <= 0.
inline Field height_rate_sq(const AxisymMetric& m) {
  const Grid& g = m.grid();
  const Field ut = m.u_theta();
  const Field margin = m.P() * m.P() - ut * ut;
  for (int j = 0; j < m.size(); ++j) {
    if (!(margin(j) > 0.0)) throw NonEmbeddable(j, margin(j));
  }
  return margin / g.sin_sq();
}

inline RevolutionSurface revolution_from_rate(const AxisymMetric& m, Field rate) {
  const Grid& g = m.grid();
  Field v = g.antiderivative_from_north(rate);
  return RevolutionSurface{m, m.u(), std::move(v), m.u_theta(), std::move(rate)};
}

}  // namespace detail

/// Embeds sigma in Euclidean 3-space as a convex-graph surface of revolution.
inline RevolutionSurface embed_r3(const AxisymMetric& m) {
  return detail::revolution_from_rate(m, detail::height_rate_sq(m).sqrt());
}

/// Sigma_tau in Minkowski space together with its projection along T0.
struct LorentzSurface {
  AxisymMetric base;            ///< sigma
  Field tau;                    ///< time function
  RevolutionSurface projected;  ///< hat Sigma_tau with metric sigma + d tau (x) d tau

  /// max |-tau_theta^2 + u_theta^2 + v~_theta^2 - P^2| over nodes.
  double minkowski_isometry_residual() const {
    const Field tt = dtheta(base, tau);
    const Field vt = projected.v_theta();
    return (-tt * tt + projected.u_theta * projected.u_theta + vt * vt - base.P() * base.P()).abs().maxCoeff();
  }
};

inline LorentzSurface embed_lifted(const AxisymMetric& m, const Field& tau) {
  m.check(tau);
  const AxisymMetric hat = lifted_metric(m, tau);
  // (P^2 + tau_theta^2 - u_theta^2) / sin^2 = (P^2 - u_theta^2) / sin^2 + tau_x^2.
  const Field ut = m.u_theta();
  const Field tx = m.grid().dx(tau);
  const Field margin = hat.P() * hat.P() - ut * ut;
  for (int j = 0; j < m.size(); ++j) {
    if (!(margin(j) > 0.0)) throw NonEmbeddable(j, margin(j));
  }
  Field rate = ((m.P() * m.P() - ut * ut) / m.grid().sin_sq() + tx * tx).sqrt();
  return LorentzSurface{m, tau, detail::revolution_from_rate(hat, std::move(rate))};
}

/// A normal vector of Sigma_tau along the phi = 0 meridian, in the
/// components (t, radial, z). The radial component is stored divided by
/// sin(theta) because it vanishes at the poles.
struct MeridianVector {
  Field t;
  Field radial_rate;
  Field z;
};

namespace detail {

/// Minkowski product of a vector given by plain component values
/// (t, radial, z) with a MeridianVector.
inline Field minkowski_dot(const Grid& g, const Field& t, const Field& radial, const Field& z,
                           const MeridianVector& b) {
  return -t * b.t + radial * g.sin_theta() * b.radial_rate + z * b.z;
}

inline Field minkowski_dot(const Grid& g, const MeridianVector& a, const MeridianVector& b) {
  return -a.t * b.t + g.sin_sq() * a.radial_rate * b.radial_rate + a.z * b.z;
}

/// <D_theta a, b>, differentiating the components of a along the meridian.
inline Field connection_pairing(const Grid& g, const MeridianVector& a, const MeridianVector& b) {
  return minkowski_dot(g, g.dtheta(a.t), g.dtheta_sin_times(a.radial_rate), g.dtheta(a.z), b);
}

}  // namespace detail

struct ExtrinsicData {
  // projected surface hat Sigma_tau in R^3, outward normal
  SymTensor2 hhat;  ///< second fundamental form, positive on round spheres
  Field k_theta;    ///< meridian principal curvature
  Field k_phi;      ///< parallel principal curvature
  Field Hhat;

  // mean curvature vector H_tau = Laplacian_sigma X
  Field lap_tau;
  Field lap_height;  ///< Laplacian of v~
  Field radial;      ///< L u = Laplacian u - u / (Q sin)^2, radial component of H_tau
  Field mean_sq;     ///< <H_tau, H_tau>

  std::optional<Field> norm_H;     ///< |H_tau| when spacelike everywhere
  std::optional<OneForm> alpha_H;  ///< alpha_{H_tau}(d_theta)
  std::optional<Field> alpha_H_phi;

  // gauge of breve e3 (outward normal of the projection, orthogonal to T0)
  Field breve_h;      ///< <H_tau, breve e3>
  Field breve_h4;     ///< <H_tau, breve e4>
  OneForm breve_alpha;  ///< <D breve e3, breve e4>, computed from the frame

  bool spacelike() const noexcept { return norm_H.has_value(); }

  const Field& require_norm_H() const {
    if (!norm_H) throw_non_spacelike();
    return *norm_H;
  }
  const OneForm& require_alpha_H() const {
    if (!alpha_H) throw_non_spacelike();
    return *alpha_H;
  }

 private:
  void throw_non_spacelike() const {
    Eigen::Index j = 0;
    mean_sq.minCoeff(&j);
    throw NonSpacelikeMeanCurvature(static_cast<int>(j), mean_sq(j));
  }
};

inline ExtrinsicData extrinsic_data(const LorentzSurface& s) {
  const AxisymMetric& m = s.base;
  const Grid& g = m.grid();
  const Field& x = g.x();
  const Field& sn = g.sin_theta();
  const Field& P = m.P();
  const Field& Q = m.Q();
  const Field& Phat = s.projected.metric.P();
  const Field& ut = s.projected.u_theta;
  const Field& rate = s.projected.v_rate;
  const Field vt = sn * rate;

  ExtrinsicData e;

  // (a) hat Sigma: h_ab = -<d_a d_b X, nu> with nu = (v~_theta, -u_theta) / Phat.
  const Field utt = g.dtheta(ut);
  const Field vtt = g.dtheta_sin_times(rate);
  e.hhat.tt = (vtt * ut - utt * vt) / Phat;
  e.hhat.tp = Field::Zero(m.size());
  e.hhat.pp = s.projected.u * vt / Phat;
  e.k_theta = e.hhat.tt / (Phat * Phat);
  e.k_phi = rate / (Q * Phat);
  e.Hhat = e.k_theta + e.k_phi;

  // (b) H_tau = (Laplacian tau, L u sin phi, L u cos phi, Laplacian v~).
  e.lap_tau = laplacian(m, s.tau);
  e.lap_height = -g.dx((Q / P) * g.sin_sq() * rate) / (P * Q);
  const Field a = (Q / P) * ut;
  const Field radial_rate = (-g.dx(a) + (x * Q * ut - P * P) / (P * g.sin_sq())) / (P * Q);
  e.radial = sn * radial_rate;
  e.mean_sq = e.radial * e.radial + e.lap_height * e.lap_height - e.lap_tau * e.lap_tau;

  const MeridianVector H{e.lap_tau, radial_rate, e.lap_height};

  // (d) breve frame: breve e3 = (0, v~_theta, -u_theta) / Phat,
  //     breve e4 = (Phat / P) (1, tau_theta u_theta, tau_theta v~_theta) / Phat^2 components.
  const Field tx = g.dx(s.tau);
  const Field tt = -sn * tx;
  const MeridianVector e3b{Field::Zero(m.size()), rate / Phat, -ut / Phat};
  const MeridianVector e4b{Phat / P, -tx * ut / (Phat * P), tt * vt / (Phat * P)};
  e.breve_h = detail::minkowski_dot(g, H, e3b);
  e.breve_h4 = detail::minkowski_dot(g, H, e4b);
  e.breve_alpha = OneForm{detail::connection_pairing(g, e3b, e4b)};

  // (c) mean curvature gauge: e3 = -H / |H|, e4 future unit normal orthogonal to e3.
  if ((e.mean_sq > 0.0).all()) {
    const Field norm = e.mean_sq.sqrt();
    const MeridianVector e3{-e.lap_tau / norm, -radial_rate / norm, -e.lap_height / norm};
    const Field h3 = e.breve_h;
    const Field h4 = e.breve_h4;
    const Field c3 = -h4 * h3.sign() / norm;
    const Field c4 = h3.abs() / norm;
    const MeridianVector e4{c3 * e3b.t + c4 * e4b.t, c3 * e3b.radial_rate + c4 * e4b.radial_rate,
                            c3 * e3b.z + c4 * e4b.z};
    e.norm_H = norm;
    e.alpha_H = OneForm{detail::connection_pairing(g, e3, e4)};
    // D_phi e3 = (radial component) * e_phi; e4 has no azimuthal component.
    const Field e4_azimuthal = Field::Zero(m.size());
    e.alpha_H_phi = sn * e3.radial_rate * e4_azimuthal;
  }
  return e;
}

}  // namespace qlm

#pragma once

// Intrinsic geometry of axisymmetric 2-metrics
//
//   sigma = P^2 d(theta)^2 + Q^2 sin^2(theta) d(phi)^2
//
// sampled on a Gauss-Legendre grid. All operators are written in x = cos(theta)
// so that the sin(theta) factors cancel analytically and nothing blows up at
// the near-pole nodes.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qlm/grid.hpp"

namespace qlm {

/// Axisymmetric one-form; only the d(theta) component is stored, the
/// d(phi) component vanishes identically.
struct OneForm {
  Field theta;
};

/// Symmetric 2-tensor in (theta, phi) coordinates. The mixed component is
/// kept explicit so callers can assert it is zero.
struct SymTensor2 {
  Field tt;
  Field tp;
  Field pp;
};

class AxisymMetric {
 public:
  AxisymMetric(GridPtr grid, Field p, Field q) : grid_(std::move(grid)), p_(std::move(p)), q_(std::move(q)) {
    if (!grid_) throw InvalidParameter("metric needs a grid");
    grid_->check(p_);
    grid_->check(q_);
    for (int j = 0; j < grid_->size(); ++j) {
      if (!(p_(j) > 0.0) || !(q_(j) > 0.0)) {
        throw InvalidParameter("metric profiles must be positive (node " + std::to_string(j) + ")");
      }
    }
  }

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  int size() const noexcept { return grid_->size(); }
  const Field& P() const noexcept { return p_; }
  const Field& Q() const noexcept { return q_; }

  /// Cylindrical radius of the embedding, u = Q sin(theta).
  Field u() const { return q_ * grid_->sin_theta(); }

  /// du/d(theta) = x Q - (1 - x^2) dQ/dx, pole-regular.
  Field u_theta() const { return grid_->x() * q_ - grid_->sin_sq() * grid_->dx(q_); }

  void check(const Field& f) const { grid_->check(f); }

  void check_same_grid(const AxisymMetric& other) const {
    if (other.size() != size()) throw DimensionError("metrics live on different grids");
  }

 private:
  GridPtr grid_;
  Field p_;
  Field q_;
};

// --- metric factories ------------------------------------------------------

inline AxisymMetric round_sphere(const GridPtr& grid, double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("sphere radius must be positive");
  const Field c = Field::Constant(grid->size(), radius);
  return {grid, c, c};
}

/// Q = 1, P = sqrt(1 - eps sin^2 theta): an oblate-type profile, smooth at the poles.
inline AxisymMetric oblate_metric(const GridPtr& grid, double eps) {
  if (!(eps < 1.0)) throw InvalidParameter("oblate parameter must be < 1");
  const Field p = (1.0 - eps * grid->sin_sq()).sqrt();
  return {grid, p, Field::Ones(grid->size())};
}

/// Induced metric of the spheroid (sin theta, -c cos theta) rotated about the axis.
inline AxisymMetric spheroid_metric(const GridPtr& grid, double c) {
  if (!(c > 0.0)) throw InvalidParameter("spheroid axis ratio must be positive");
  const Field& x = grid->x();
  const Field p = (x * x + c * c * grid->sin_sq()).sqrt();
  return {grid, p, Field::Ones(grid->size())};
}

// --- operators -------------------------------------------------------------

/// Integral of f over the surface, 2 pi sum_j w_j f_j P_j Q_j.
inline double integrate_surface(const AxisymMetric& m, const Field& f) {
  m.check(f);
  return 2.0 * std::numbers::pi * m.grid().integrate(f * m.P() * m.Q());
}

/// Theta component of df.
inline Field dtheta(const AxisymMetric& m, const Field& f) { return m.grid().dtheta(f); }

inline Field laplacian(const AxisymMetric& m, const Field& f) {
  const Grid& g = m.grid();
  const Field flux = (m.Q() / m.P()) * g.sin_sq() * g.dx(f);
  return g.dx(flux) / (m.P() * m.Q());
}

/// Divergence of an axisymmetric one-form W (index raised with sigma).
/// The d(theta) component of a smooth one-form vanishes like sin(theta), so
/// sin(theta) W_theta is smooth in x.
inline Field divergence(const AxisymMetric& m, const OneForm& w) {
  const Grid& g = m.grid();
  m.check(w.theta);
  const Field flux = (m.Q() / m.P()) * g.sin_theta() * w.theta;
  return -g.dx(flux) / (m.P() * m.Q());
}

inline OneForm gradient(const AxisymMetric& m, const Field& f) { return {dtheta(m, f)}; }

inline Field gradient_norm_sq(const AxisymMetric& m, const Field& f) {
  const Field fx = m.grid().dx(f);
  return m.grid().sin_sq() * fx * fx / (m.P() * m.P());
}

/// sigma^{-1}(a, b) for one-forms a, b.
inline Field pair(const AxisymMetric& m, const OneForm& a, const OneForm& b) {
  return a.theta * b.theta / (m.P() * m.P());
}

/// Covariant Hessian nabla_a nabla_b f in (theta, phi) coordinates.
inline SymTensor2 hessian(const AxisymMetric& m, const Field& f) {
  const Grid& g = m.grid();
  const Field& x = g.x();
  const Field fx = g.dx(f);
  const Field fxx = g.dx(fx);
  const Field f_t = -g.sin_theta() * fx;
  const Field f_tt = g.sin_sq() * fxx - x * fx;
  const Field p_t = dtheta(m, m.P());
  SymTensor2 h;
  h.tt = f_tt - (p_t / m.P()) * f_t;
  h.tp = Field::Zero(m.size());
  // (Q sin)(Q sin)' f_theta / P^2 with f_theta = -sin f_x.
  h.pp = -g.sin_sq() * m.Q() * m.u_theta() * fx / (m.P() * m.P());
  return h;
}

/// Eigenvalues of the mixed Hessian sigma^{ac} nabla_c nabla_b f. The phi
/// entry is evaluated in factored form, -u_theta f_x / (P^2 Q).
struct MixedHessian {
  Field theta;
  Field phi;
};

inline MixedHessian mixed_hessian(const AxisymMetric& m, const Field& f) {
  const SymTensor2 h = hessian(m, f);
  const Field fx = m.grid().dx(f);
  return {h.tt / (m.P() * m.P()), -m.u_theta() * fx / (m.P() * m.P() * m.Q())};
}

/// sigma^{ab} T_ab.
inline Field trace(const AxisymMetric& m, const SymTensor2& t) {
  const Field u = m.u();
  return t.tt / (m.P() * m.P()) + t.pp / (u * u);
}

/// Intrinsic Gauss curvature, K = -(1/(P u)) d/d(theta)(u_theta / P),
/// written in x as (1/(P Q)) d/dx(u_theta / P).
inline Field gauss_curvature(const AxisymMetric& m) {
  return m.grid().dx(m.u_theta() / m.P()) / (m.P() * m.Q());
}

/// Gauss curvature of sigma + d(tau) (x) d(tau):
///   (1 + |grad tau|^2)^{-1} [K + (1 + |grad tau|^2)^{-1} det(sigma^{-1} Hess tau)].
inline Field hat_gauss_curvature(const AxisymMetric& m, const Field& tau) {
  const Field k = gauss_curvature(m);
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const MixedHessian mh = mixed_hessian(m, tau);
  return (k + mh.theta * mh.phi / lift) / lift;
}

/// The metric sigma + d(tau) (x) d(tau) as an AxisymMetric (P^2 -> P^2 + tau_theta^2).
inline AxisymMetric lifted_metric(const AxisymMetric& m, const Field& tau) {
  const Field t_t = dtheta(m, tau);
  return {m.grid_ptr(), (m.P() * m.P() + t_t * t_t).sqrt(), m.Q()};
}

/// Sum_l c_l P_l(cos theta) with c[0] multiplying P_1 when `from_l1` is set.
inline Field legendre_series(const Grid& g, const std::vector<double>& coeffs, bool from_l1) {
  Field f = Field::Zero(g.size());
  const int offset = from_l1 ? 1 : 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) f += coeffs[i] * g.legendre(static_cast<int>(i) + offset);
  }
  return f;
}

}  // namespace qlm

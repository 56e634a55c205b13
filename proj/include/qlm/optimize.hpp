#pragma once

// Minimization of E(Sigma, tau) over tau = sum_{l=1}^{L} c_l P_l(cos theta).
// Gradients pair the optimal-embedding residual with the basis fields;
// steps are quasi-Newton (BFGS) with Armijo backtracking, and any trial
// point failing the convexity guard or the embedding is rejected.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qlm/energy.hpp"

namespace qlm {

struct TauCoefficients {
  std::vector<double> coeffs;  ///< c_1 .. c_L

  TauCoefficients() = default;
  explicit TauCoefficients(std::vector<double> c) : coeffs(std::move(c)) {}
  static TauCoefficients zero(int count = 8) { return TauCoefficients(std::vector<double>(count, 0.0)); }

  int size() const noexcept { return static_cast<int>(coeffs.size()); }
  Field field(const Grid& g) const { return legendre_series(g, coeffs, true); }

  Eigen::VectorXd vector() const { return Eigen::Map<const Eigen::VectorXd>(coeffs.data(), size()); }
  static TauCoefficients from_vector(const Eigen::VectorXd& v) {
    return TauCoefficients(std::vector<double>(v.data(), v.data() + v.size()));
  }
};

struct GuardMargins {
  double hat_curvature;     ///< min of the Gauss curvature of sigma + d tau (x) d tau
  double base_curvature;    ///< min K
  double lifted_numerator;  ///< min of K + det(sigma^-1 Hess tau) / (1 + |grad tau|^2)
  double margin() const { return std::min({hat_curvature, base_curvature, lifted_numerator}); }
};

inline GuardMargins convexity_margins(const AxisymMetric& m, const Field& tau) {
  const Field k = gauss_curvature(m);
  const Field lift = 1.0 + gradient_norm_sq(m, tau);
  const MixedHessian mh = mixed_hessian(m, tau);
  const Field numerator = k + mh.theta * mh.phi / lift;
  return {(numerator / lift).minCoeff(), k.minCoeff(), numerator.minCoeff()};
}

/// Lesser of the convexity margins; positive means sigma + d tau (x) d tau
/// has positive Gauss curvature and sigma itself is convex.
inline double convexity_guard(const AxisymMetric& m, const Field& tau) { return convexity_margins(m, tau).margin(); }

/// g_l = sign * int residual * P_l dv for l = 1..L.
inline Eigen::VectorXd energy_gradient(const PhysicalData& d, const TauCoefficients& tau) {
  const Grid& g = d.grid();
  const Field r = residual(d, tau.field(g));
  Eigen::VectorXd grad(tau.size());
  for (int l = 1; l <= tau.size(); ++l) grad(l - 1) = kResidualGradientSign * integrate_surface(d.metric, r * g.legendre(l));
  return grad;
}

/// Gradient component of the constant mode, which time translation makes flat.
inline double constant_mode_gradient(const PhysicalData& d, const TauCoefficients& tau) {
  return kResidualGradientSign * integrate_surface(d.metric, residual(d, tau.field(d.grid())));
}

inline Eigen::VectorXd energy_gradient_fd(const PhysicalData& d, const TauCoefficients& tau, double step = 1e-5) {
  const Grid& g = d.grid();
  const Field base = tau.field(g);
  Eigen::VectorXd grad(tau.size());
  for (int l = 1; l <= tau.size(); ++l) {
    const Field dir = g.legendre(l);
    grad(l - 1) = (qle(d, base + step * dir).total - qle(d, base - step * dir).total) / (2.0 * step);
  }
  return grad;
}

/// L2 norm of the residual over Sigma.
inline double residual_norm(const PhysicalData& d, const Field& tau) {
  const Field r = residual(d, tau);
  return std::sqrt(integrate_surface(d.metric, r * r));
}

struct MinimizeOptions {
  double tol = 1e-7;  ///< stop when the coefficient-space gradient norm is below this
  int max_iter = 500;
  double armijo = 1e-4;
  double backtrack = 0.5;
  double min_step = 1e-12;
  bool quasi_newton = true;
  bool fd_calibration = true;
  double fd_step = 1e-5;
};

struct IterateRecord {
  int iteration;
  double energy;
  double gradient_norm;
  double guard_margin;
  double step;
};

struct MinimizeReport {
  TauCoefficients tau_star;
  double energy_star = 0.0;
  double residual_norm = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool guard_active = false;  ///< some trial step was rejected by the guard
  int guard_rejections = 0;
  double fd_calibration_error = 0.0;  ///< relative gradient-vs-FD error at the initial point
  std::vector<IterateRecord> trace;
};

namespace detail {

struct Trial {
  bool ok = false;
  bool guard_failed = false;
  double energy = 0.0;
  double margin = 0.0;
};

inline Trial evaluate_trial(const PhysicalData& d, const Eigen::VectorXd& c) {
  Trial t;
  const Field tau = TauCoefficients::from_vector(c).field(d.grid());
  t.margin = convexity_guard(d.metric, tau);
  if (!(t.margin > 0.0)) {
    t.guard_failed = true;
    return t;
  }
  try {
    t.energy = qle(d, tau).total;
  } catch (const NonEmbeddable&) {
    t.guard_failed = true;
    return t;
  }
  t.ok = std::isfinite(t.energy);
  return t;
}

}  // namespace detail

inline MinimizeReport minimize_energy(const PhysicalData& d, const TauCoefficients& init,
                                      const MinimizeOptions& opts = {}) {
  if (init.size() < 1) throw InvalidParameter("need at least one Legendre coefficient");
  if (!(opts.tol > 0.0) || opts.max_iter < 0) throw InvalidParameter("tolerance must be positive");
  const Grid& g = d.grid();
  {
    const double margin = convexity_guard(d.metric, init.field(g));
    if (!(margin > 0.0)) throw GuardViolation("initial time function violates the convexity guard", margin);
  }

  MinimizeReport rep;
  Eigen::VectorXd c = init.vector();
  double energy = qle(d, init.field(g)).total;
  Eigen::VectorXd grad = energy_gradient(d, init);
  if (opts.fd_calibration) {
    const Eigen::VectorXd fd = energy_gradient_fd(d, init, opts.fd_step);
    const double scale = std::max(fd.norm(), 1e-12);
    rep.fd_calibration_error = (grad - fd).norm() / scale;
  }

  const int n = static_cast<int>(c.size());
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  rep.trace.push_back({0, energy, grad.norm(), convexity_guard(d.metric, init.field(g)), 0.0});

  int it = 0;
  while (grad.norm() >= opts.tol && it < opts.max_iter) {
    Eigen::VectorXd dir = opts.quasi_newton ? Eigen::VectorXd(-hinv * grad) : Eigen::VectorXd(-grad);
    if (grad.dot(dir) >= 0.0) {
      hinv.setIdentity();
      dir = -grad;
    }

    double step = 1.0;
    detail::Trial trial;
    bool accepted = false;
    bool steepest = !opts.quasi_newton;
    while (!accepted) {
      const Eigen::VectorXd cand = c + step * dir;
      trial = detail::evaluate_trial(d, cand);
      if (trial.guard_failed) {
        rep.guard_active = true;
        ++rep.guard_rejections;
      }
      // Near the minimum energy differences are at roundoff level, so a
      // non-increasing energy is accepted when the sufficient decrease is
      // below what double precision can resolve.
      const double predicted = opts.armijo * step * grad.dot(dir);
      const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(energy));
      if (trial.ok && (trial.energy <= energy + predicted || (trial.energy <= energy && -predicted < noise))) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
      if (step * dir.norm() < opts.min_step) {
        if (!steepest) {
          steepest = true;
          hinv.setIdentity();
          dir = -grad;
          step = 1.0;
          continue;
        }
        throw LineSearchFailure("line search failed at iteration " + std::to_string(it + 1) +
                                " (gradient norm " + std::to_string(grad.norm()) + ")");
      }
    }

    const Eigen::VectorXd s = step * dir;
    const Eigen::VectorXd c_new = c + s;
    const TauCoefficients tau_new = TauCoefficients::from_vector(c_new);
    const Eigen::VectorXd grad_new = energy_gradient(d, tau_new);
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (opts.quasi_newton && sy > 1e-300) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    c = c_new;
    grad = grad_new;
    energy = trial.energy;
    ++it;
    rep.trace.push_back({it, energy, grad.norm(), trial.margin, step});
  }

  rep.tau_star = TauCoefficients::from_vector(c);
  const Field tau_star = rep.tau_star.field(g);
  rep.energy_star = qle(d, tau_star).total;
  rep.residual_norm = residual_norm(d, tau_star);
  rep.gradient_norm = grad.norm();
  rep.iterations = it;
  rep.converged = grad.norm() < opts.tol;
  return rep;
}

}  // namespace qlm

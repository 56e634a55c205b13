#pragma once

// Gauss-Legendre collocation in x = cos(theta) for axisymmetric fields on
// the 2-sphere. Nodes are interior (no poles), so every pointwise formula
// below can divide by sin(theta); fields are assumed smooth in x.

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "qlm/errors.hpp"

namespace qlm {

/// Node values of an axisymmetric scalar field.
using Field = Eigen::ArrayXd;

/// Legendre polynomials P_0..P_lmax evaluated at x (column l holds P_l).
inline Eigen::MatrixXd legendre_table(const Eigen::ArrayXd& x, int lmax) {
  Eigen::MatrixXd p(x.size(), lmax + 1);
  p.col(0).setOnes();
  if (lmax >= 1) p.col(1) = x.matrix();
  for (int l = 1; l < lmax; ++l) {
    p.col(l + 1) = ((2.0 * l + 1.0) * x * p.col(l).array() - l * p.col(l - 1).array()) / (l + 1.0);
  }
  return p;
}

/// P_l(x) and P_l'(x) at a single point by the three-term recurrence.
inline void legendre_with_derivative(int l, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (l == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < l; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = l * (x * p1 - p0) / (x * x - 1.0);
}

class Grid {
 public:
  explicit Grid(int n) : n_(n) {
    if (n < 4) throw InvalidParameter("grid size must be >= 4, got " + std::to_string(n));
    build_nodes();
    build_differentiation();
    legendre_ = legendre_table(x_, n_);
  }

  int size() const noexcept { return n_; }

  /// Colatitudes, strictly increasing in (0, pi).
  const Eigen::ArrayXd& theta() const noexcept { return theta_; }
  /// cos(theta) at the nodes (strictly decreasing).
  const Eigen::ArrayXd& x() const noexcept { return x_; }
  /// sin(theta) at the nodes.
  const Eigen::ArrayXd& sin_theta() const noexcept { return sin_; }
  /// 1 - x^2 = sin^2(theta), formed without cancellation.
  const Eigen::ArrayXd& sin_sq() const noexcept { return sin_sq_; }
  /// Weights for the integral of f(theta) sin(theta) d(theta) over [0, pi].
  const Eigen::ArrayXd& weights() const noexcept { return w_; }

  /// d/dx on node values.
  const Eigen::MatrixXd& dx_matrix() const noexcept { return dx_; }
  /// d/d(theta) = -sin(theta) d/dx on node values.
  const Eigen::MatrixXd& diff_matrix() const noexcept { return dtheta_; }

  Field dx(const Field& f) const {
    check(f);
    return (dx_ * f.matrix()).array();
  }
  Field dtheta(const Field& f) const { return -sin_ * dx(f); }

  /// Derivative in theta of sin(theta) * w(x). Exact factorization keeps
  /// fields that vanish like sin(theta) at the poles spectrally accurate.
  Field dtheta_sin_times(const Field& w) const { return x_ * w - sin_sq_ * dx(w); }

  /// Integral over [0, pi] of f sin(theta) d(theta) (= integral of f dx over [-1, 1]).
  double integrate(const Field& f) const {
    check(f);
    return (w_ * f).sum();
  }

  /// P_l(cos theta) at the nodes, l <= n.
  Field legendre(int l) const {
    if (l < 0 || l > n_) throw InvalidParameter("Legendre degree out of range");
    return legendre_.col(l).array();
  }

  /// Coefficients a_0..a_{n-1} of the degree n-1 interpolant in the Legendre basis.
  Eigen::VectorXd legendre_coefficients(const Field& f) const {
    check(f);
    Eigen::VectorXd a(n_);
    for (int k = 0; k < n_; ++k) {
      a(k) = (2.0 * k + 1.0) / 2.0 * (w_ * f * legendre_.col(k).array()).sum();
    }
    return a;
  }

  /// F(x_j) = integral from x_j to 1 of g(x') dx', i.e. the antiderivative in
  /// x anchored at the north pole (theta = 0), via Legendre-coefficient
  /// integration of the interpolant of g.
  Field antiderivative_from_north(const Field& g) const {
    const Eigen::VectorXd a = legendre_coefficients(g);
    // integral_{-1}^{x} P_0 = x + 1; integral_{-1}^{x} P_k = (P_{k+1} - P_{k-1}) / (2k + 1).
    Field from_south = a(0) * (x_ + 1.0);
    for (int k = 1; k < n_; ++k) {
      from_south += a(k) * (legendre_.col(k + 1).array() - legendre_.col(k - 1).array()) / (2.0 * k + 1.0);
    }
    return 2.0 * a(0) - from_south;
  }

  /// Barycentric interpolation of node values at an arbitrary x in [-1, 1].
  double interpolate(const Field& f, double xe) const {
    check(f);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double d = xe - x_(j);
      if (d == 0.0) return f(j);
      const double c = bary_(j) / d;
      num += c * f(j);
      den += c;
    }
    return num / den;
  }

  void check(const Field& f) const {
    if (f.size() != n_) {
      throw DimensionError("field has " + std::to_string(f.size()) + " values, grid has " + std::to_string(n_) +
                           " nodes");
    }
  }

 private:
  void build_nodes() {
    x_.resize(n_);
    w_.resize(n_);
    // Newton iteration on P_n from the Chebyshev-like initial guess; node k
    // ends up at the k-th largest root so theta increases with k.
    for (int k = 0; k < n_; ++k) {
      double xk = std::cos(std::numbers::pi * (k + 0.75) / (n_ + 0.5));
      double p = 0.0, dp = 1.0;
      for (int it = 0; it < 100; ++it) {
        legendre_with_derivative(n_, xk, p, dp);
        const double step = p / dp;
        xk -= step;
        if (std::abs(step) < 1e-16) break;
      }
      legendre_with_derivative(n_, xk, p, dp);
      x_(k) = xk;
      w_(k) = 2.0 / ((1.0 - xk * xk) * dp * dp);
    }
    theta_ = x_.acos();
    sin_sq_ = (1.0 - x_) * (1.0 + x_);
    sin_ = sin_sq_.sqrt();
  }

  void build_differentiation() {
    // Barycentric weights for Gauss-Legendre points: (-1)^k sqrt((1 - x_k^2) w_k).
    bary_.resize(n_);
    for (int k = 0; k < n_; ++k) bary_(k) = ((k % 2) ? -1.0 : 1.0) * std::sqrt(sin_sq_(k) * w_(k));
    dx_.setZero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      double diag = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        dx_(i, j) = (bary_(j) / bary_(i)) / (x_(i) - x_(j));
        diag -= dx_(i, j);
      }
      dx_(i, i) = diag;
    }
    dtheta_ = -(sin_.matrix().asDiagonal() * dx_);
  }

  int n_;
  Eigen::ArrayXd x_, theta_, sin_, sin_sq_, w_, bary_;
  Eigen::MatrixXd dx_, dtheta_, legendre_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int n) { return std::make_shared<const Grid>(n); }

}  // namespace qlm

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "qlm/errors.hpp"

namespace qlm {

/// Chebyshev-Lobatto points on [a, b] (increasing, endpoints included) with
/// spectral differentiation and barycentric interpolation.
class ChebyshevGrid {
 public:
  ChebyshevGrid(int points, double a, double b) : a_(a), b_(b) {
    if (points < 3) throw InvalidParameter("Chebyshev grid needs at least 3 points");
    if (!(b > a)) throw InvalidParameter("Chebyshev interval must be non-empty");
    const int n = points - 1;
    t_.resize(points);
    s_.resize(points);
    bary_.resize(points);
    for (int k = 0; k <= n; ++k) {
      // t in [-1, 1] increasing; s = a + (b - a)(t + 1)/2.
      t_(k) = -std::cos(std::numbers::pi * k / n);
      s_(k) = a + (b - a) * (t_(k) + 1.0) / 2.0;
      bary_(k) = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
    }
    d_.setZero(points, points);
    for (int i = 0; i <= n; ++i) {
      double diag = 0.0;
      for (int j = 0; j <= n; ++j) {
        if (i == j) continue;
        d_(i, j) = (bary_(j) / bary_(i)) / (t_(i) - t_(j));
        diag -= d_(i, j);
      }
      d_(i, i) = diag;
    }
    d_ *= 2.0 / (b - a);
  }

  int size() const noexcept { return static_cast<int>(s_.size()); }
  const Eigen::ArrayXd& points() const noexcept { return s_; }

  Eigen::ArrayXd differentiate(const Eigen::ArrayXd& f) const { return (d_ * f.matrix()).array(); }

  double interpolate(const Eigen::ArrayXd& f, double s) const {
    const double t = 2.0 * (s - a_) / (b_ - a_) - 1.0;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < size(); ++j) {
      const double dt = t - t_(j);
      if (dt == 0.0) return f(j);
      const double c = bary_(j) / dt;
      num += c * f(j);
      den += c;
    }
    return num / den;
  }

 private:
  double a_, b_;
  Eigen::ArrayXd t_, s_, bary_;
  Eigen::MatrixXd d_;
};

}  // namespace qlm

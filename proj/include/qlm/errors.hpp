#pragma once

#include <stdexcept>
#include <string>

namespace qlm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Fields or metrics defined on different grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// P^2 - u_theta^2 <= 0 somewhere: the profile cannot be realized as a
/// graph-like surface of revolution in Euclidean 3-space.
class NonEmbeddable : public Error {
 public:
  NonEmbeddable(int node, double margin)
      : Error("metric is not embeddable as a convex surface of revolution: node " +
              std::to_string(node) + ", margin " + std::to_string(margin)),
        node_(node),
        margin_(margin) {}

  int node() const noexcept { return node_; }
  double margin() const noexcept { return margin_; }

 private:
  int node_;
  double margin_;
};

/// <H,H> <= 0 somewhere on a surface in Minkowski space.
class NonSpacelikeMeanCurvature : public Error {
 public:
  NonSpacelikeMeanCurvature(int node, double mean_sq)
      : Error("mean curvature vector is not spacelike at node " + std::to_string(node) +
              " (<H,H> = " + std::to_string(mean_sq) + ")"),
        node_(node),
        mean_sq_(mean_sq) {}

  int node() const noexcept { return node_; }
  double mean_sq() const noexcept { return mean_sq_; }

 private:
  int node_;
  double mean_sq_;
};

class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent physical-data table. Carries the offending
/// data row (1-based, header excluded; 0 when not row-specific) and column.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, int row = 0, std::string column = {})
      : Error(what), row_(row), column_(std::move(column)) {}

  int row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  int row_;
  std::string column_;
};

class NodeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GuardViolation : public Error {
 public:
  GuardViolation(const std::string& what, double margin) : Error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

class LineSearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qlm

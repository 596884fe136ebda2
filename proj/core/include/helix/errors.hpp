#pragma once

#include <stdexcept>
#include <string>

namespace helix {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid radial domain or grid parameters (r_min <= 0, r_max <= r_min, N < 3, ...).
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

/// A physical parameter or model coupling violates its invariant.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The potential evaluated to NaN/inf at a grid node, typically because the
/// inner cutoff is too close to a singularity.
class NonFinitePotential : public Error {
 public:
  explicit NonFinitePotential(double radius);
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

/// Inverse iteration failed to reach the residual tolerance within its budget.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(int index, double residual, double tolerance);
  int index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  int index_;
  double residual_;
};

/// normalize() was handed an identically zero sample vector.
class ZeroFunction : public Error {
 public:
  using Error::Error;
};

/// Configuration document violates the schema. Carries the offending key path.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& reason);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace helix

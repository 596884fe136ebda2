#include "helix/errors.hpp"

#include <sstream>

namespace helix {

namespace {

std::string nonfinite_message(double radius) {
  std::ostringstream os;
  os << "potential is not finite at r = " << radius
     << " (inner cutoff too close to a singularity?)";
  return os.str();
}

std::string convergence_message(int index, double residual, double tolerance) {
  std::ostringstream os;
  os << "inverse iteration for eigenpair " << index << " stalled at residual " << residual
     << " (tolerance " << tolerance << ")";
  return os.str();
}

}  // namespace

NonFinitePotential::NonFinitePotential(double radius)
    : Error(nonfinite_message(radius)), radius_(radius) {}

ConvergenceFailure::ConvergenceFailure(int index, double residual, double tolerance)
    : Error(convergence_message(index, residual, tolerance)),
      index_(index),
      residual_(residual) {}

SchemaError::SchemaError(std::string path, const std::string& reason)
    : Error("config error at '" + path + "': " + reason), path_(std::move(path)) {}

}  // namespace helix

#pragma once

#include <span>
#include <vector>

#include "helix/discretize.hpp"

namespace helix {

/// One eigenvalue with its Euclidean-normalized, sign-fixed eigenvector.
/// The first component of magnitude > 1e-12 is positive.
struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;
};

struct EigenRequest {
  int count = 1;              ///< number of lowest eigenpairs, 1 <= count <= dim
  double tol_lambda = 1e-10;  ///< relative bisection tolerance
  /// Residual acceptance bound, relative to max(1, |lambda|). The effective
  /// bound floors at ~100 eps ||T||, the attainable backward-stability limit
  /// (relevant on fine grids where 2/dr^2 dwarfs the eigenvalues).
  double tol_residual = 1e-8;
};

/// Number of eigenvalues strictly below x, by Sturm-sequence counting of the
/// signed pivots of the shifted LDL^T factorization. Vanishing pivots are
/// perturbed by ~ulp * ||T|| toward the positive side, which keeps the count
/// strict when x lands exactly on an eigenvalue.
int count_below(std::span<const double> diag, std::span<const double> offdiag, double x);
int count_below(const TridiagonalOperator& op, double x);

/// The `req.count` lowest eigenpairs in ascending order. Eigenvalues are
/// isolated by bisection inside Gershgorin bounds; eigenvectors by inverse
/// iteration at the converged shift, re-orthogonalized within clusters of
/// width 1e3 * tol_lambda. Throws ConvergenceFailure if some vector cannot
/// meet tol_residual within the iteration budget.
std::vector<EigenPair> lowest_eigenpairs(std::span<const double> diag,
                                         std::span<const double> offdiag,
                                         const EigenRequest& req);
std::vector<EigenPair> lowest_eigenpairs(const TridiagonalOperator& op, const EigenRequest& req);

}  // namespace helix

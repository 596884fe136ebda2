#pragma once

#include <functional>
#include <span>
#include <vector>

#include "helix/discretize.hpp"
#include "helix/model.hpp"

namespace helix {

struct SolveTolerances {
  double tol_lambda = 1e-10;
  double tol_residual = 1e-8;
};

/// Full description of one bound-state problem. When `u_override` is set it
/// replaces the model chain entirely: the operator becomes -d^2/dr^2 + u(r)
/// with the given raw potential (used for analytic benchmarks).
struct ProblemSpec {
  PhysicalParams params;
  int m = 0;
  PotentialModel model = Free{};
  RadialGrid grid;
  int levels = 3;
  std::function<double(double)> u_override;  // empty -> use u_of_r
  SolveTolerances tol;

  /// The potential entering the operator: override if present, otherwise
  /// u_of_r(r, params, m, model).
  std::function<double(double)> radial_potential() const;

  /// Throws on invalid params/model, levels < 1 or levels > N-1.
  void validate() const;
};

/// Grid and tolerance metadata carried by every result.
struct Provenance {
  double r_min = 0.0, r_max = 0.0, dr = 0.0;
  int n_intervals = 0;
  double tol_lambda = 0.0, tol_residual = 0.0;
};

/// Low-lying spectrum: ascending eigenvalues, physical energies
/// E_n = (hbar^2/2mu) lambda_n, and eigenfunctions sampled on the interior
/// nodes, normalized to unit trapezoidal integral of |f|^2.
struct Spectrum {
  std::vector<double> lambdas;
  std::vector<double> energies;
  std::vector<std::vector<double>> functions;
  ProblemSpec spec;
  Provenance provenance;
};

Spectrum solve_bound_states(const ProblemSpec& spec);

/// Rescales f so the trapezoidal integral of |f|^2 over the grid is 1.
/// Accepts either N+1 samples (all nodes) or N-1 samples (interior nodes,
/// implicit Dirichlet zeros at the ends). Throws ZeroFunction when f is
/// identically zero.
std::vector<double> normalize(std::vector<double> f, const RadialGrid& grid);

/// Trapezoidal integral of |f|^2 (same sample conventions as normalize()).
double norm_squared(std::span<const double> f, const RadialGrid& grid);

/// rho_i = |f_i|^2 for an already normalized f.
std::vector<double> density(const std::vector<double>& f);

/// xi_i = f_i / sqrt(r_i); sample count selects interior or full nodes.
std::vector<double> reconstruct_xi(const std::vector<double>& f, const RadialGrid& grid);

/// Number of sign changes across samples, ignoring entries below
/// rel_threshold * max|f| (noise floor of exponentially small tails).
int count_sign_changes(std::span<const double> f, double rel_threshold = 1e-6);

/// Stability shifts of one level under the three perturbations of the
/// convergence protocol, all relative: |lambda' - lambda| / max(1, |lambda|).
struct LevelShifts {
  double refined_grid = 0.0;     ///< N -> 2N at fixed domain
  double enlarged_domain = 0.0;  ///< r_max -> r_max + delta at fixed dr
  double reduced_cutoff = 0.0;   ///< r_min -> r_min / 2
  double estimated_order = 0.0;  ///< Richardson exponent from N, 2N, 4N
  bool converged = false;        ///< all three shifts below tol_rel
};

struct ConvergenceReport {
  Spectrum baseline;
  std::vector<LevelShifts> levels;
  double tol_rel = 0.0;
  double delta_rmax = 0.0;

  bool all_converged() const;
};

/// Runs the full protocol: grid refinement (plus a 4N solve for the Richardson
/// order estimate), domain enlargement at fixed dr, and cutoff halving.
/// delta_rmax <= 0 selects the default 0.25 * (r_max - r_min).
ConvergenceReport converge(const ProblemSpec& spec, double tol_rel = 1e-6,
                           double delta_rmax = -1.0);

namespace detail {

/// The three stability checks without the Richardson solve; used by scans.
struct StabilityShifts {
  std::vector<double> refined, enlarged, reduced;
};
StabilityShifts stability_shifts(const ProblemSpec& spec, const Spectrum& baseline,
                                 double delta_rmax);

}  // namespace detail

}  // namespace helix

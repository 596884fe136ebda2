#pragma once

#include <string>
#include <vector>

#include "helix/solve.hpp"

namespace helix {

/// Scannable scalar parameters. "m" sweeps the azimuthal quantum number
/// itself (integral axis values).
enum class ScanParameter {
  Omega,
  M,
  CornellA,
  CornellB,
  KratzerA,
  KratzerD,
  MorseA,
  MorseR0,
  B0,
  PhiB,
};

const char* scan_parameter_name(ScanParameter p);
ScanParameter scan_parameter_from_name(const std::string& name);

struct ScanAxis {
  ScanParameter parameter = ScanParameter::Omega;
  std::vector<double> values;

  /// Non-empty, finite, strictly ascending; integral values when the
  /// parameter is M. Throws InvalidParameter otherwise.
  void validate() const;
};

enum class PointStatus { Ok, Failed };

struct ScanRow {
  double axis_value = 0.0;
  int m = 0;
  int n_r = 0;
  double lambda = 0.0;
  double energy = 0.0;
  bool converged = false;
  PointStatus status = PointStatus::Ok;
  std::string error;  // diagnostic for failed points
};

struct ScanOptions {
  int workers = 1;
  bool check_convergence = true;  ///< run the three stability checks per point
  double tol_rel = 1e-6;
  double delta_rmax = -1.0;  ///< <= 0: default 0.25 * (r_max - r_min)
};

struct ScanResult {
  ScanAxis axis;
  std::vector<int> m_set;
  int levels = 0;
  ProblemSpec base;
  std::vector<ScanRow> rows;  ///< ordered by (axis value, m, n_r)
  Provenance provenance;
  int failures = 0;
};

/// Substitutes one axis value into a problem spec. Throws InvalidParameter
/// when the axis does not apply to the spec's model.
ProblemSpec apply_axis(ProblemSpec spec, ScanParameter parameter, double value);

/// Solves every (axis value, m) point for the lowest `levels` states.
/// Per-point failures are recorded in-row and never abort the sweep.
/// When the axis parameter is M the m_set must hold at most one entry.
ScanResult scan_spectrum(const ProblemSpec& base, const ScanAxis& axis,
                         const std::vector<int>& m_set, int levels,
                         const ScanOptions& options = {});

struct DensityCurve {
  double omega = 0.0;
  int n_r = 0;
  std::vector<double> rho;  ///< on interior nodes; empty when status == Failed
  double norm_check = 0.0;  ///< trapezoidal integral of rho
  int node_count = 0;       ///< interior sign changes of the underlying f
  PointStatus status = PointStatus::Ok;
  std::string error;
};

struct DensityResult {
  RadialGrid grid;
  std::vector<double> radii;  ///< interior nodes
  std::vector<DensityCurve> curves;  ///< ordered by (omega, n_r)
  ProblemSpec base;
  Provenance provenance;
  int failures = 0;
};

/// Normalized probability densities per (omega, n_r).
DensityResult scan_density(const ProblemSpec& base, const std::vector<double>& omegas,
                           const std::vector<int>& n_r_set, const ScanOptions& options = {});

/// Energy ladders at +m and -m, solved twice: at the base gauge background
/// and with the charge switched off. Exact symmetry is expected only when,
/// in addition to e = 0, the geometric cross term vanishes (m omega k = 0).
struct MAsymmetryReport {
  int m = 0;
  std::vector<double> energies_plus, energies_minus;            // base params
  std::vector<double> energies_plus_e0, energies_minus_e0;      // e = 0
  double max_diff_base = 0.0;
  double max_diff_e0 = 0.0;
  bool exact_symmetry_expected = false;  ///< e-off run with m omega k == 0
};

MAsymmetryReport verify_m_asymmetry(const ProblemSpec& base, int m);

}  // namespace helix

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "helix/model.hpp"
#include "helix/scan.hpp"
#include "helix/solve.hpp"

namespace helix {

struct GridConfig {
  double r_min = 1e-3;
  double r_max = 20.0;
  int n = 4000;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct SolverConfig {
  double tol_lambda = 1e-10;
  double tol_residual = 1e-8;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct ConvergenceConfig {
  double tol_rel = 1e-6;
  std::optional<double> delta_rmax;  // absent -> 0.25 * (r_max - r_min)

  friend bool operator==(const ConvergenceConfig&, const ConvergenceConfig&) = default;
};

struct ScanConfig {
  ScanParameter parameter = ScanParameter::Omega;
  std::vector<double> values;
  std::vector<int> m_set;  // empty -> { quantum.m }
  bool check_convergence = true;

  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct DensityConfig {
  std::vector<double> omegas;
  std::vector<int> levels;  // n_r values

  friend bool operator==(const DensityConfig&, const DensityConfig&) = default;
};

/// Raw benchmark potential u(r) = coeff * r^exponent replacing the model
/// chain (box: coeff 0; linear well: exponent 1; half-line oscillator:
/// exponent 2).
struct UOverrideConfig {
  double coeff = 0.0;
  double exponent = 0.0;

  friend bool operator==(const UOverrideConfig&, const UOverrideConfig&) = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool plots = false;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

bool operator==(const PhysicalParams& a, const PhysicalParams& b);
bool operator==(const QuantumNumbers& a, const QuantumNumbers& b);
bool operator==(const PotentialModel& a, const PotentialModel& b);

/// Fully materialized run configuration. parse_config() applies defaults and
/// validates every field, so a RunConfig in hand is always schema-clean.
struct RunConfig {
  std::optional<std::string> preset;
  PhysicalParams physical;
  PotentialModel model = Free{};
  QuantumNumbers quantum;
  GridConfig grid;
  SolverConfig solver;
  ConvergenceConfig convergence;
  std::optional<ScanConfig> scan;
  std::optional<DensityConfig> density;
  std::optional<UOverrideConfig> u_override;
  OutputConfig output;
  int workers = 1;

  /// The single-point problem this configuration describes.
  ProblemSpec problem() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON configuration document. Unknown keys are
/// rejected with the offending path; defaults are materialized. A "preset"
/// key loads the named bundled preset first and overlays the remaining keys.
/// When "workers" is absent, the HELIX_STURM_WORKERS environment variable
/// (if set) supplies the default.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::filesystem::path& path);

/// Resolves the effective configuration for a CLI invocation: an optional
/// config file, an optional preset name (equivalent to a "preset" key in the
/// document), or both (file keys overlay the preset). Throws SchemaError when
/// neither is given.
RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::optional<std::string>& preset_name);

/// Canonical JSON echo of a configuration; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

}  // namespace helix

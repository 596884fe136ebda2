#pragma once

#include <string>

#include "helix/config.hpp"
#include "helix/scan.hpp"
#include "helix/solve.hpp"

namespace helix {

/// Shortest round-trip formatting (17 significant digits) used in every CSV.
std::string format_double(double value);

// CSV bodies. Column schemas are versioned and stable:
//   spectrum: n_r, lambda, energy
//   scan:     axis_value, m, n_r, lambda, energy, converged
//   density:  r, rho, n_r, omega
//   converge: n_r, lambda, energy, shift_refine, shift_domain, shift_cutoff,
//             estimated_order, converged
//   profile:  r, v_eff, m
std::string spectrum_csv(const Spectrum& spectrum);
std::string scan_csv(const ScanResult& result);
std::string density_csv(const DensityResult& result);
std::string converge_csv(const ConvergenceReport& report);
std::string profile_csv(const RunConfig& config, const std::vector<int>& m_values);

/// Run manifest: effective config echo, grid, tolerances, convergence flags,
/// produced files and tool version. `extra` entries land under "results".
struct ManifestInfo {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> files;
  int rows = 0;
  int failures = 0;
  bool converged_all = true;
};
std::string manifest_json(const RunConfig& config, const ManifestInfo& info);

}  // namespace helix

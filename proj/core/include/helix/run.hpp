#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "helix/config.hpp"

namespace helix {

enum class Subcommand { Solve, Scan, Density, Converge, Preset };

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  // overrides config.output.dir
  std::optional<int> workers;                    // overrides config.workers
  bool strict = false;                           // per-point failures -> exit 1
  std::string preset_name;                       // for Subcommand::Preset
};

/// Executes one subcommand: writes CSV artifacts, a JSON manifest and
/// (optionally) SVG plots under the output directory. Diagnostics go to
/// `diag`. Returns the process exit status: 0 success, 1 per-point failures
/// in strict mode, 2 configuration errors.
int run(Subcommand subcommand, const RunConfig& config, const RunOptions& options,
        std::ostream& diag);

Subcommand subcommand_from_name(const std::string& name);

}  // namespace helix

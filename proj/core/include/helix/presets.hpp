#pragma once

#include <string>
#include <vector>

#include "helix/config.hpp"

namespace helix {

/// What a preset produces when run.
enum class PresetKind {
  Scan,     ///< parameter sweep -> scan.csv
  Density,  ///< density profiles -> density.csv
  Profile,  ///< effective-potential curves -> profile.csv
};

struct Preset {
  std::string name;
  PresetKind kind;
  std::string description;
  RunConfig config;
  std::vector<int> profile_m;  ///< m values for Profile presets
};

/// Names of all bundled presets (fig1 .. fig15).
std::vector<std::string> preset_names();

/// Throws SchemaError for unknown names.
const Preset& preset(const std::string& name);

/// Convenience: the preset's RunConfig.
RunConfig preset_config(const std::string& name);

}  // namespace helix

#pragma once

#include <json.hpp>

#include "helix/config.hpp"

namespace helix::detail {

/// Canonical ordered-JSON form of a configuration (shared by emit_config and
/// the run manifest writer).
nlohmann::ordered_json config_to_json(const RunConfig& c);

}  // namespace helix::detail

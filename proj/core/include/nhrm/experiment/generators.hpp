#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "nhrm/matrix_model.hpp"

namespace nhrm::experiment {

struct GeneratedProfile {
  VarianceProfile profile;
  /// Entry bounds; only the `er` generator sets this.
  std::optional<VarianceProfile> sup;
  std::string name;
};

/// Known generators: wigner, diagonal_decay, band, block, power_decay, er.
/// Params are read from a JSON object (`n`, `gamma`, `w`, `sizes`, `d`).
GeneratedProfile builtin_profile(const std::string& name, const nlohmann::json& params);

}  // namespace nhrm::experiment

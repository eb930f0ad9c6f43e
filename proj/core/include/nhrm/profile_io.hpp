#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "nhrm/matrix_model.hpp"

namespace nhrm {

// Profile file layout (JSON):
//   {"rows": n, "cols": m, "symmetric": true,
//    "entries": [[...], ...]}                 dense, row-major
//   or "triplets": [[i, j, b], ...]           1-based, missing cells are 0
// Entries may be numbers or strings such as "3/7"; strings keep exactness for the
// rational routines.

VarianceProfile parse_profile(const nlohmann::json& j);
RationalTable parse_rational_profile(const nlohmann::json& j, bool* symmetric = nullptr);
VarianceProfile load_profile(const std::filesystem::path& path);
nlohmann::json profile_to_json(const VarianceProfile& p);
nlohmann::json profile_to_json(const RationalTable& t, bool symmetric);
void save_profile(const VarianceProfile& p, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace nhrm

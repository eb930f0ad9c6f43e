#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhrm/bounds.hpp"
#include "nhrm/experiment/generators.hpp"
#include "nhrm/matrix_model.hpp"
#include "nhrm/pnorm.hpp"

namespace nhrm::experiment {

/// Pass/fail thresholds for the Monte Carlo experiments. The defaults are the
/// calibrated values; config/gates.json carries the same numbers.
struct Gates {
  double mc_sigma = 3.0;
  double invariant_rel_tol = 1e-9;
  double schatten_mixed_ratio_min = 1.0;
  double schatten_mixed_ratio_max = 10.0;
  double formula_ratio_min = 0.1;
  double formula_ratio_max = 10.0;
  double heavy_ratio_min = 1.0 / 15.0;
  double heavy_ratio_max = 15.0;
  double tail_C_max = 20.0;
  double er_mean_min = 1.85;
  double er_mean_max = 2.25;
};

Gates gates_from_json(const nlohmann::json& j, Gates base = {});
nlohmann::json to_json(const Gates& g);

struct ProfileSource {
  std::filesystem::path file;  ///< used when builtin is empty
  std::filesystem::path sup_file;
  std::string builtin;
  nlohmann::json params = nlohmann::json::object();
};

struct OutputSpec {
  std::filesystem::path path;  ///< empty: stdout
  std::string format = "csv";  ///< csv | json
};

struct ExperimentConfig {
  std::string experiment = "norm_comparison";
  ProfileSource profile_source;
  ModelKind model = ModelKind::Gaussian;
  double model_parameter = 0.0;
  std::vector<PNorm> p_list;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  unsigned thread_hint = 1;
  OutputSpec output;
  Gates gates;
  bounds::Constants constants;
  std::vector<double> t_grid;  ///< tail comparison only; empty picks a default grid
};

/// Throws BadConfig on missing or malformed fields.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Builds the profile (and entry bounds, if any) named by the config.
GeneratedProfile resolve_profile(const ExperimentConfig& cfg);

/// THREADS from the environment if set and positive, else the hint (at least 1).
unsigned resolve_threads(unsigned hint);

}  // namespace nhrm::experiment

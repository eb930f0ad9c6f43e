#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhrm/bounds.hpp"
#include "nhrm/experiment/config.hpp"
#include "nhrm/experiment/estimate.hpp"

namespace nhrm::experiment {

/// One output line. `monte_carlo` rows carry stderr and quantiles; derived
/// rows (ratios, bounds) only carry a value in `est.mean`.
struct ResultRow {
  std::string experiment, profile, model, p;
  McEstimate est;
  bool monte_carlo = true;
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<ResultRow> rows;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();

  bool passed() const;
  /// First row with this p and statistic, if any.
  const ResultRow* find(const std::string& p, const std::string& statistic) const;
};

/// Runs body(i) for i in [0, count) on `threads` workers. Results must be
/// written to slots keyed by i.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body);

ExperimentResult run_norm_comparison(const ExperimentConfig& cfg);
/// Empty t_grid: 64 evenly spaced points up to the largest sampled Schatten norm.
ExperimentResult run_tail_comparison(const ExperimentConfig& cfg,
                                     const std::vector<double>& t_grid = {});
ExperimentResult run_moment_validation(const ExperimentConfig& cfg);
ExperimentResult run_heavy_comparison(const ExperimentConfig& cfg);

struct ErParams {
  std::size_t n = 0;
  double d = 0.0;
  double alpha = 1.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned thread_hint = 1;
  double C = 1.0;  ///< constant in the explicit bound
  /// Also assert the calibrated mean window from `gates`.
  bool check_window = false;
  Gates gates;
};

/// Centered Erdos-Renyi adjacency spectral edge: statistic ||A - EA|| / sqrt(d).
ExperimentResult run_er_edge(const ErParams& params);

/// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace nhrm::experiment

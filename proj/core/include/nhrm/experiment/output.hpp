#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "nhrm/experiment/experiments.hpp"

namespace nhrm::experiment {

inline constexpr const char* kCsvHeader =
    "experiment,profile,model,p,statistic,mean,stderr,count,q05,q50,q95";

/// Round-trip (%.17g) formatting; derived rows leave stderr and quantiles blank.
void write_csv(const ExperimentResult& r, std::ostream& out);
std::string to_csv(const ExperimentResult& r);
nlohmann::json to_json(const ExperimentResult& r);
/// Writes CSV or JSON by format tag; an empty path writes to stdout.
void write_result(const ExperimentResult& r, const std::filesystem::path& path,
                  const std::string& format);

}  // namespace nhrm::experiment

#include "nhrm/experiment/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nhrm/error.hpp"

namespace nhrm::experiment {
namespace {

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Quotes a CSV field when it holds a comma or quote.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json num_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

void write_csv(const ExperimentResult& r, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    const auto& e = row.est;
    out << field(row.experiment) << ',' << field(row.profile) << ',' << field(row.model) << ','
        << field(row.p) << ',' << field(e.statistic) << ',' << num(e.mean) << ','
        << num(e.stderr_) << ',' << e.count << ',' << num(e.q05) << ',' << num(e.q50) << ','
        << num(e.q95) << '\n';
  }
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream s;
  write_csv(r, s);
  return s.str();
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    const auto& e = row.est;
    nlohmann::json j = {{"experiment", row.experiment}, {"profile", row.profile},
                        {"model", row.model},           {"p", row.p},
                        {"statistic", e.statistic},     {"mean", num_json(e.mean)},
                        {"count", e.count}};
    if (row.monte_carlo || !std::isnan(e.stderr_)) j["stderr"] = num_json(e.stderr_);
    if (row.monte_carlo) j["quantiles"] = {num_json(e.q05), num_json(e.q50), num_json(e.q95)};
    rows.push_back(std::move(j));
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"experiment", r.experiment}, {"rows", rows}, {"checks", checks},
          {"passed", r.passed()}, {"extra", r.extra}};
}

void write_result(const ExperimentResult& r, const std::filesystem::path& path,
                  const std::string& format) {
  if (format != "csv" && format != "json") throw Error(ErrorCode::BadConfig, "unknown format " + format);
  auto emit = [&](std::ostream& out) {
    if (format == "csv")
      write_csv(r, out);
    else
      out << to_json(r).dump(2) << '\n';
  };
  if (path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
  emit(f);
}

}  // namespace nhrm::experiment

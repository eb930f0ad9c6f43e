// Command-line front end: bounds, simulate, decompose, verify, er-edge.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/experiment/config.hpp"
#include "nhrm/experiment/experiments.hpp"
#include "nhrm/experiment/output.hpp"
#include "nhrm/profile_io.hpp"
#include "nhrm/structure/decomposition.hpp"
#include "nhrm/trace/campaign.hpp"

namespace {

using nlohmann::json;
namespace ex = nhrm::experiment;

int report_checks(const ex::ExperimentResult& r) {
  for (const auto& c : r.checks)
    if (!c.passed) std::cerr << "FAILED " << c.name << ": " << c.detail << '\n';
  return r.passed() ? 0 : 1;
}

json bounds_for(const nhrm::VarianceProfile& prof, const std::vector<nhrm::PNorm>& ps,
                const nhrm::bounds::Constants& c) {
  using namespace nhrm::bounds;
  json out = json::array();
  auto add = [&](auto&& f) {
    try {
      out.push_back(to_json(f()));
    } catch (const nhrm::Error&) {
      // evaluator outside its domain for this p or profile
    }
  };
  for (const auto& p : ps) {
    if (!p.is_infinite() && p.is_integer()) {
      const auto k = static_cast<unsigned>(p.value());
      add([&] { return sigma_terms(prof, k); });
      if (prof.symmetric())
        add([&] { return moment_bound_symmetric(prof, k, c); });
      else
        add([&] { return moment_bound_rect(prof, k, c); });
    }
    if (!p.is_infinite()) add([&] { return moment_equiv(prof, p.value(), c); });
    add([&] { return expected_norm_formula(prof, p, c); });
  }
  add([&] { return dimension_dependent_bound(prof, c); });
  add([&] { return dimension_free_logi_bound(prof, c); });
  return out;
}

/// One row per report; columns are the union of term names, blank where a
/// report has no such term.
void print_bounds_table(const json& reports, std::ostream& os) {
  std::vector<std::string> terms;
  for (const auto& r : reports)
    for (const auto& [name, v] : r.at("terms").items())
      if (std::find(terms.begin(), terms.end(), name) == terms.end()) terms.push_back(name);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"theorem", "p"};
  head.insert(head.end(), terms.begin(), terms.end());
  head.push_back("total");
  cells.push_back(head);
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };
  for (const auto& r : reports) {
    const json& p = r.at("p");
    std::vector<std::string> line{r.at("theorem").get<std::string>(),
                                  p.is_string() ? p.get<std::string>() : num(p.get<double>())};
    for (const auto& t : terms) line.push_back(r.at("terms").contains(t) ? num(r.at("terms").at(t)) : "");
    line.push_back(num(r.at("total")));
    cells.push_back(line);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << '\n';
  }
}

json plan_json(const nhrm::structure::DecompositionPlan& plan,
               const nhrm::structure::CoreLemmaReport& lemma) {
  const auto counts = plan.partition.counts();
  json levels = json::array();
  for (const auto& l : lemma.levels)
    levels.push_back({{"k", l.k},
                      {"threshold_i", l.threshold_i},
                      {"worst_ratio_i", l.worst_ratio_i},
                      {"checked_i", l.checked_i},
                      {"threshold_ii", l.threshold_ii},
                      {"worst_ratio_ii", l.worst_ratio_ii},
                      {"checked_ii", l.checked_ii}});
  json perm = json::array();
  for (auto v : plan.perm) perm.push_back(v + 1);
  return {{"perm", perm},
          {"depth", plan.schedule.depth()},
          {"class_counts", {{"E1", counts[0]}, {"E2", counts[1]}, {"E3", counts[2]}}},
          {"a", plan.a},
          {"b", plan.b},
          {"core_lemma", {{"passed", lemma.passed}, {"levels", levels}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonhomogeneous random matrix bounds, oracles and experiments"};
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate closed-form bounds for a profile");
  std::string profile_path, constants_path;
  std::vector<std::string> p_args{"2", "inf"};
  bounds_cmd->add_option("profile", profile_path, "Profile JSON file")->required()->check(CLI::ExistingFile);
  bounds_cmd->add_option("--p", p_args, "Exponents (numbers or inf)")->delimiter(',');
  std::string constants_entry;
  bounds_cmd->add_option("--constants-entry", constants_entry,
                         "Take the multipliers from this key of the constants file");
  bool as_json = false;
  bounds_cmd->add_flag("--json", as_json, "Print the full reports as JSON");
  bounds_cmd->add_option("--constants", constants_path, "JSON object of term multipliers")
      ->check(CLI::ExistingFile);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a config");
  std::string config_path, out_path, format;
  sim_cmd->add_option("config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--out", out_path, "Output file (overrides config)");
  sim_cmd->add_option("--format", format, "csv or json (overrides config)")
      ->check(CLI::IsMember({"csv", "json"}));

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "Build the greedy block decomposition of a profile");
  std::string cells_csv;
  dec_cmd->add_option("profile", profile_path, "Profile JSON file")->required()->check(CLI::ExistingFile);
  dec_cmd->add_option("--cells-csv", cells_csv, "Write the cell-class matrix as CSV");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Run the exact identity and inequality campaigns");
  nhrm::trace::CampaignOptions vopt;
  std::string records_path;
  ver_cmd->add_option("--cap-p", vopt.cap_p, "Largest p for shape checks")->check(CLI::Range(1u, 5u));
  ver_cmd->add_option("--instances", vopt.instances, "Fuzz instances per graph check");
  ver_cmd->add_option("--profiles", vopt.profiles, "Random profiles per shape check");
  ver_cmd->add_option("--seed", vopt.seed, "Master seed");
  ver_cmd->add_option("--records", records_path, "Write one line per checked instance");

  // er-edge
  auto* er_cmd = app.add_subcommand("er-edge", "Spectral edge of centered Erdos-Renyi adjacency");
  ex::ErParams er;
  er_cmd->add_option("--n", er.n, "Vertices")->required();
  er_cmd->add_option("--d", er.d, "Mean degree (default 2 log^2 n)");
  er_cmd->add_option("--alpha", er.alpha, "Moment order multiplier");
  er_cmd->add_option("--trials", er.trials, "Trials");
  er_cmd->add_option("--seed", er.seed, "Master seed");
  er_cmd->add_option("--threads", er.thread_hint, "Thread hint (THREADS overrides)");
  er_cmd->add_option("--C", er.C, "Constant in the explicit bound");
  er_cmd->add_flag("--check-window", er.check_window, "Assert the calibrated mean window");
  er_cmd->add_option("--out", out_path, "Output file");
  er_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bounds_cmd) {
      std::vector<nhrm::PNorm> ps;
      for (const auto& s : p_args) ps.push_back(nhrm::PNorm::parse(s));
      nhrm::bounds::Constants c;
      if (!constants_path.empty()) {
        const json file = nhrm::read_json_file(constants_path);
        if (constants_entry.empty())
          c = file.get<nhrm::bounds::Constants>();
        else if (file.contains(constants_entry))
          c = file.at(constants_entry).get<nhrm::bounds::Constants>();
        else
          throw nhrm::Error(nhrm::ErrorCode::BadConfig, "no entry " + constants_entry + " in " + constants_path);
      }
      const json reports = bounds_for(nhrm::load_profile(profile_path), ps, c);
      if (as_json)
        std::cout << reports.dump(2) << '\n';
      else
        print_bounds_table(reports, std::cout);
      return 0;
    }
    if (*sim_cmd) {
      auto cfg = ex::load_config(config_path);
      if (!out_path.empty()) cfg.output.path = out_path;
      if (!format.empty()) cfg.output.format = format;
      const auto r = ex::run_experiment(cfg);
      ex::write_result(r, cfg.output.path, cfg.output.format);
      return report_checks(r);
    }
    if (*dec_cmd) {
      const auto prof = nhrm::load_profile(profile_path);
      const auto plan = nhrm::structure::greedy_rearrangement(prof);
      const auto lemma = nhrm::structure::verify_core_lemma(prof, plan);
      std::cout << plan_json(plan, lemma).dump(2) << '\n';
      if (!cells_csv.empty()) {
        std::ofstream f(cells_csv);
        if (!f) throw nhrm::Error(nhrm::ErrorCode::Io, "cannot write " + cells_csv);
        const std::size_t n = plan.partition.dimension();
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = 1; j <= n; ++j)
            f << static_cast<int>(plan.partition.classify(i, j)) << (j == n ? '\n' : ',');
      }
      return lemma.passed ? 0 : 1;
    }
    if (*ver_cmd) {
      std::ofstream records;
      if (!records_path.empty()) {
        records.open(records_path);
        if (!records) throw nhrm::Error(nhrm::ErrorCode::Io, "cannot write " + records_path);
      }
      const auto summary = nhrm::trace::run_verification(vopt, [&](const nhrm::trace::CheckRecord& r) {
        if (records.is_open()) records << nhrm::trace::format_record(r) << '\n';
        if (!r.holds) std::cerr << "FAILS " << nhrm::trace::format_record(r) << '\n';
      });
      std::cout << "checked " << summary.checked << " failed " << summary.failed << '\n';
      return summary.failed == 0 ? 0 : 1;
    }
    if (*er_cmd) {
      if (er.d == 0.0) {
        const double l = std::log(static_cast<double>(er.n));
        er.d = 2.0 * l * l;
      }
      const auto r = ex::run_er_edge(er);
      ex::write_result(r, out_path, format.empty() ? "csv" : format);
      return report_checks(r);
    }
  } catch (const nhrm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

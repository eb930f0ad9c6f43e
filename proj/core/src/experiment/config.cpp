#include "nhrm/experiment/config.hpp"

#include <cstdlib>

#include "nhrm/error.hpp"
#include "nhrm/profile_io.hpp"

namespace nhrm::experiment {
namespace {

using nlohmann::json;

template <class T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string(key) + ": " + e.what());
  }
}

PNorm parse_p(const json& v) {
  try {
    if (v.is_string()) return PNorm::parse(v.get<std::string>());
    if (v.is_number()) return PNorm::finite(v.get<double>());
  } catch (const Error& e) {
    throw Error(ErrorCode::BadConfig, std::string("p_list: ") + e.what());
  }
  throw Error(ErrorCode::BadConfig, "p_list entries must be numbers or \"inf\"");
}

const char* model_name(ModelKind k) {
  switch (k) {
    case ModelKind::Gaussian: return "gaussian";
    case ModelKind::Bounded: return "bounded";
    case ModelKind::Heavy: return "heavy";
    case ModelKind::Stable: return "stable";
  }
  return "gaussian";
}

}  // namespace

Gates gates_from_json(const json& j, Gates g) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, "gates must be an object");
  const std::pair<const char*, double*> slots[] = {
      {"mc_sigma", &g.mc_sigma},
      {"invariant_rel_tol", &g.invariant_rel_tol},
      {"schatten_mixed_ratio_min", &g.schatten_mixed_ratio_min},
      {"schatten_mixed_ratio_max", &g.schatten_mixed_ratio_max},
      {"formula_ratio_min", &g.formula_ratio_min},
      {"formula_ratio_max", &g.formula_ratio_max},
      {"heavy_ratio_min", &g.heavy_ratio_min},
      {"heavy_ratio_max", &g.heavy_ratio_max},
      {"tail_C_max", &g.tail_C_max},
      {"er_mean_min", &g.er_mean_min},
      {"er_mean_max", &g.er_mean_max},
  };
  for (const auto& [key, val] : j.items()) {
    bool known = false;
    for (const auto& [name, slot] : slots)
      if (key == name) {
        if (!val.is_number()) throw Error(ErrorCode::BadConfig, "gate " + key + " must be a number");
        *slot = val.get<double>();
        known = true;
      }
    if (!known) throw Error(ErrorCode::BadConfig, "unknown gate " + key);
  }
  return g;
}

json to_json(const Gates& g) {
  return {{"mc_sigma", g.mc_sigma},
          {"invariant_rel_tol", g.invariant_rel_tol},
          {"schatten_mixed_ratio_min", g.schatten_mixed_ratio_min},
          {"schatten_mixed_ratio_max", g.schatten_mixed_ratio_max},
          {"formula_ratio_min", g.formula_ratio_min},
          {"formula_ratio_max", g.formula_ratio_max},
          {"heavy_ratio_min", g.heavy_ratio_min},
          {"heavy_ratio_max", g.heavy_ratio_max},
          {"tail_C_max", g.tail_C_max},
          {"er_mean_min", g.er_mean_min},
          {"er_mean_max", g.er_mean_max}};
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, "config must be an object");
  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = field<std::string>(j, "experiment");

  const json& prof = j.contains("profile") ? j["profile"] : json();
  if (!prof.is_object()) throw Error(ErrorCode::BadConfig, "profile must be an object");
  if (prof.contains("builtin")) {
    c.profile_source.builtin = field<std::string>(prof, "builtin");
    c.profile_source.params = prof;
  } else if (prof.contains("file")) {
    c.profile_source.file = field<std::string>(prof, "file");
  } else {
    throw Error(ErrorCode::BadConfig, "profile needs builtin or file");
  }
  if (prof.contains("sup_file")) c.profile_source.sup_file = field<std::string>(prof, "sup_file");

  const json model = j.contains("model") ? j["model"] : json{{"type", "gaussian"}};
  const auto type = field<std::string>(model, "type");
  if (type == "gaussian") {
    c.model = ModelKind::Gaussian;
  } else if (type == "bounded") {
    c.model = ModelKind::Bounded;
  } else if (type == "heavy") {
    c.model = ModelKind::Heavy;
    c.model_parameter = field<double>(model, "beta");
  } else if (type == "stable") {
    c.model = ModelKind::Stable;
    c.model_parameter = field<double>(model, "alpha");
  } else {
    throw Error(ErrorCode::BadConfig, "unknown model type " + type);
  }

  if (!j.contains("p_list") || !j["p_list"].is_array() || j["p_list"].empty())
    throw Error(ErrorCode::BadConfig, "p_list must be a nonempty array");
  for (const auto& v : j["p_list"]) c.p_list.push_back(parse_p(v));

  const auto trials = field<long long>(j, "trials");
  if (trials < 1) throw Error(ErrorCode::BadConfig, "trials must be >= 1");
  c.trials = static_cast<std::uint64_t>(trials);
  if (j.contains("master_seed")) c.master_seed = field<std::uint64_t>(j, "master_seed");
  if (j.contains("thread_hint")) c.thread_hint = field<unsigned>(j, "thread_hint");
  if (j.contains("output")) {
    const json& o = j["output"];
    if (o.contains("path")) c.output.path = field<std::string>(o, "path");
    if (o.contains("format")) c.output.format = field<std::string>(o, "format");
    if (c.output.format != "csv" && c.output.format != "json")
      throw Error(ErrorCode::BadConfig, "output format must be csv or json");
  }
  if (j.contains("gates")) c.gates = gates_from_json(j["gates"]);
  if (j.contains("constants")) c.constants = field<bounds::Constants>(j, "constants");
  if (j.contains("t_grid")) c.t_grid = field<std::vector<double>>(j, "t_grid");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json_file(path));
}

json to_json(const ExperimentConfig& c) {
  json prof = c.profile_source.builtin.empty()
                  ? json{{"file", c.profile_source.file.string()}}
                  : c.profile_source.params;
  if (!c.profile_source.sup_file.empty()) prof["sup_file"] = c.profile_source.sup_file.string();
  json model = {{"type", model_name(c.model)}};
  if (c.model == ModelKind::Heavy) model["beta"] = c.model_parameter;
  if (c.model == ModelKind::Stable) model["alpha"] = c.model_parameter;
  json ps = json::array();
  for (const auto& p : c.p_list) {
    if (p.is_infinite())
      ps.push_back("inf");
    else
      ps.push_back(p.value());
  }
  json out = {{"experiment", c.experiment},
              {"profile", prof},
              {"model", model},
              {"p_list", ps},
              {"trials", c.trials},
              {"master_seed", c.master_seed},
              {"gates", to_json(c.gates)}};
  if (!c.constants.empty()) out["constants"] = c.constants;
  if (!c.t_grid.empty()) out["t_grid"] = c.t_grid;
  return out;
}

GeneratedProfile resolve_profile(const ExperimentConfig& cfg) {
  const auto& src = cfg.profile_source;
  GeneratedProfile g = src.builtin.empty()
                           ? GeneratedProfile{load_profile(src.file), std::nullopt,
                                              src.file.stem().string()}
                           : builtin_profile(src.builtin, src.params);
  if (!src.sup_file.empty()) g.sup = load_profile(src.sup_file);
  return g;
}

unsigned resolve_threads(unsigned hint) {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hint == 0 ? 1 : hint;
}

}  // namespace nhrm::experiment

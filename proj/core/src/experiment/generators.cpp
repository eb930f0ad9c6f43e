#include "nhrm/experiment/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "nhrm/error.hpp"

namespace nhrm::experiment {
namespace {

std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::size_t need_n(const nlohmann::json& params, const std::string& gen) {
  if (!params.contains("n") || !params["n"].is_number_integer() || params["n"].get<long long>() < 1)
    throw Error(ErrorCode::BadParams, gen + " needs a positive integer n");
  return params["n"].get<std::size_t>();
}

double need_real(const nlohmann::json& params, const char* key, const std::string& gen) {
  if (!params.contains(key) || !params[key].is_number())
    throw Error(ErrorCode::BadParams, gen + " needs numeric " + key);
  const double v = params[key].get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::BadParams, gen + ": non-finite " + key);
  return v;
}

VarianceProfile fill(std::size_t n, const std::function<double(std::size_t, std::size_t)>& f) {
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = f(i + 1, j + 1);
  return new_profile(m, true);
}

}  // namespace

GeneratedProfile builtin_profile(const std::string& name, const nlohmann::json& params) {
  if (name == "wigner") {
    const auto n = need_n(params, name);
    return {fill(n, [](auto, auto) { return 1.0; }), std::nullopt,
            "wigner(n=" + std::to_string(n) + ")"};
  }
  if (name == "diagonal_decay") {
    const auto n = need_n(params, name);
    const double g = need_real(params, "gamma", name);
    return {fill(n, [g](std::size_t i, std::size_t j) {
              return i == j ? std::pow(static_cast<double>(i), -g) : 0.0;
            }),
            std::nullopt, "diagonal_decay(gamma=" + shortest(g) + ",n=" + std::to_string(n) + ")"};
  }
  if (name == "band") {
    const auto n = need_n(params, name);
    if (!params.contains("w") || !params["w"].is_number_integer() || params["w"].get<long long>() < 0)
      throw Error(ErrorCode::BadParams, "band needs a nonnegative integer w");
    const auto w = params["w"].get<std::size_t>();
    return {fill(n, [w](std::size_t i, std::size_t j) {
              return (i > j ? i - j : j - i) <= w ? 1.0 : 0.0;
            }),
            std::nullopt, "band(w=" + std::to_string(w) + ",n=" + std::to_string(n) + ")"};
  }
  if (name == "block") {
    if (!params.contains("sizes") || !params["sizes"].is_array() || params["sizes"].empty())
      throw Error(ErrorCode::BadParams, "block needs a nonempty sizes array");
    std::vector<std::size_t> owner;
    std::string label = "block(sizes=";
    for (std::size_t k = 0; k < params["sizes"].size(); ++k) {
      const auto& s = params["sizes"][k];
      if (!s.is_number_integer() || s.get<long long>() < 1)
        throw Error(ErrorCode::BadParams, "block sizes must be positive integers");
      owner.insert(owner.end(), s.get<std::size_t>(), k);
      label += (k ? "/" : "") + std::to_string(s.get<std::size_t>());
    }
    return {fill(owner.size(), [&](std::size_t i, std::size_t j) {
              return owner[i - 1] == owner[j - 1] ? 1.0 : 0.0;
            }),
            std::nullopt, label + ")"};
  }
  if (name == "power_decay") {
    const auto n = need_n(params, name);
    const double g = need_real(params, "gamma", name);
    return {fill(n, [g](std::size_t i, std::size_t j) {
              return i == j ? 0.0 : std::pow(static_cast<double>(std::min(i, j)), -g);
            }),
            std::nullopt, "power_decay(gamma=" + shortest(g) + ",n=" + std::to_string(n) + ")"};
  }
  if (name == "er") {
    const auto n = need_n(params, name);
    const double d = need_real(params, "d", name);
    if (!(d > 0.0) || d > static_cast<double>(n))
      throw Error(ErrorCode::BadParams, "er needs 0 < d <= n");
    const double pe = d / static_cast<double>(n);
    const double v = std::sqrt(pe * (1.0 - pe));
    const double s = std::max(pe, 1.0 - pe);
    return {fill(n, [v](std::size_t i, std::size_t j) { return i == j ? 0.0 : v; }),
            fill(n, [s](std::size_t i, std::size_t j) { return i == j ? 0.0 : s; }),
            "er(n=" + std::to_string(n) + ",d=" + shortest(d) + ")"};
  }
  throw Error(ErrorCode::UnknownGenerator, name);
}

}  // namespace nhrm::experiment

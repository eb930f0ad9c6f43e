#include "nhrm/profile_io.hpp"

#include <cmath>
#include <fstream>

#include "nhrm/error.hpp"

namespace nhrm {

namespace {

Rational entry_value(const nlohmann::json& v) {
  if (v.is_string()) {
    Rational q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw Error(ErrorCode::BadParams, "bad rational entry");
    q.canonicalize();
    return q;
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteEntry, "profile entry is not finite");
    return Rational(d);
  }
  throw Error(ErrorCode::BadParams, "profile entry must be a number or a rational string");
}

double entry_double(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  return entry_value(v).get_d();
}

template <class T, class Conv>
Table<T> read_table(const nlohmann::json& j, Conv conv) {
  if (!j.is_object()) throw Error(ErrorCode::BadParams, "profile must be a JSON object");
  if (j.contains("entries")) {
    const auto& rows = j.at("entries");
    const std::size_t n = rows.size();
    const std::size_t m = n ? rows.at(0).size() : j.value("cols", std::size_t{0});
    Table<T> t(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m) throw Error(ErrorCode::ShapeMismatch, "ragged entries array");
      for (std::size_t k = 0; k < m; ++k) t(i, k) = conv(rows[i][k]);
    }
    return t;
  }
  if (j.contains("triplets")) {
    const std::size_t n = j.at("rows").get<std::size_t>();
    const std::size_t m = j.value("cols", n);
    Table<T> t(n, m);
    for (const auto& tr : j.at("triplets")) {
      const auto i = tr.at(0).get<std::size_t>(), k = tr.at(1).get<std::size_t>();
      if (i < 1 || i > n || k < 1 || k > m) throw Error(ErrorCode::ShapeMismatch, "triplet index out of range");
      t(i - 1, k - 1) = conv(tr.at(2));
    }
    return t;
  }
  throw Error(ErrorCode::BadParams, "profile needs 'entries' or 'triplets'");
}

}  // namespace

VarianceProfile parse_profile(const nlohmann::json& j) {
  const bool sym = j.value("symmetric", false);
  return new_profile(read_table<double>(j, entry_double), sym);
}

RationalTable parse_rational_profile(const nlohmann::json& j, bool* symmetric) {
  if (symmetric) *symmetric = j.value("symmetric", false);
  auto t = read_table<Rational>(j, entry_value);
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t k = 0; k < t.cols(); ++k)
      if (t(i, k) < 0) throw Error(ErrorCode::NegativeEntry, "profile entry is negative");
  return t;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

VarianceProfile load_profile(const std::filesystem::path& path) { return parse_profile(read_json_file(path)); }

nlohmann::json profile_to_json(const VarianceProfile& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < p.cols(); ++k) row.push_back(p(i, k));
    rows.push_back(std::move(row));
  }
  return {{"rows", p.rows()}, {"cols", p.cols()}, {"symmetric", p.symmetric()}, {"entries", std::move(rows)}};
}

nlohmann::json profile_to_json(const RationalTable& t, bool symmetric) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < t.cols(); ++k) row.push_back(t(i, k).get_str());
    rows.push_back(std::move(row));
  }
  return {{"rows", t.rows()}, {"cols", t.cols()}, {"symmetric", symmetric}, {"entries", std::move(rows)}};
}

void save_profile(const VarianceProfile& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << profile_to_json(p).dump(1) << '\n';
}

}  // namespace nhrm

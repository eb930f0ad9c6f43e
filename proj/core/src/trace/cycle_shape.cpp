#include "nhrm/trace/cycle_shape.hpp"

#include <algorithm>
#include <string>

#include "nhrm/error.hpp"

namespace nhrm::trace {

std::vector<int> canonicalize(std::span<const int> walk) {
  std::map<int, int> relabel;
  std::vector<int> out;
  out.reserve(walk.size());
  for (int x : walk) {
    auto [it, inserted] = relabel.emplace(x, static_cast<int>(relabel.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

std::map<Edge, int> walk_edge_mults(std::span<const int> walk) {
  std::map<Edge, int> m;
  const std::size_t len = walk.size();
  for (std::size_t t = 0; t < len; ++t) {
    const int a = walk[t], b = walk[(t + 1) % len];
    ++m[{std::min(a, b), std::max(a, b)}];
  }
  return m;
}

CycleShape CycleShape::from_labels(std::vector<int> labels) {
  if (labels.empty() || labels.size() % 2 != 0) throw Error(ErrorCode::BadShape, "shape length must be even and positive");
  if (canonicalize(labels) != labels) throw Error(ErrorCode::BadShape, "labels are not in first-appearance order");
  for (std::size_t t = 0; t < labels.size(); ++t)
    if (labels[t] == labels[(t + 1) % labels.size()]) throw Error(ErrorCode::BadShape, "shape has a loop");
  CycleShape s;
  s.m_ = *std::max_element(labels.begin(), labels.end());
  s.mults_ = walk_edge_mults(labels);
  s.labels_ = std::move(labels);
  return s;
}

std::map<int, int> CycleShape::n_stats() const {
  std::map<int, int> out;
  for (const auto& [e, k] : mults_) ++out[k];
  return out;
}

bool CycleShape::is_even() const noexcept {
  return std::all_of(mults_.begin(), mults_.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

bool CycleShape::is_admissible() const noexcept {
  return std::all_of(mults_.begin(), mults_.end(), [](const auto& kv) { return kv.second >= 2; });
}

namespace {

template <class Keep>
std::vector<CycleShape> enumerate(unsigned p, const Caps& caps, Keep&& keep) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  if (p > caps.max_p) throw Error(ErrorCode::CapExceeded, "p = " + std::to_string(p) + " exceeds the shape cap");
  const std::size_t len = 2 * p;
  std::vector<int> lab(len, 0);
  std::vector<CycleShape> out;
  lab[0] = 1;
  // Restricted-growth sequences with no repeated neighbours; ascending choices
  // produce lexicographic order.
  auto rec = [&](auto&& self, std::size_t t, int mx) -> void {
    if (t == len) {
      auto s = CycleShape::from_labels(lab);
      if (keep(s)) out.push_back(std::move(s));
      return;
    }
    for (int l = 1; l <= mx + 1; ++l) {
      if (l == lab[t - 1]) continue;
      if (t == len - 1 && l == lab[0]) continue;
      lab[t] = l;
      self(self, t + 1, std::max(mx, l));
    }
  };
  rec(rec, 1, 1);
  return out;
}

}  // namespace

std::vector<CycleShape> enumerate_even_shapes(unsigned p, const Caps& caps) {
  return enumerate(p, caps, [](const CycleShape& s) { return s.is_even(); });
}

std::vector<CycleShape> enumerate_admissible_shapes(unsigned p, const Caps& caps) {
  return enumerate(p, caps, [](const CycleShape& s) { return s.is_admissible(); });
}

}  // namespace nhrm::trace

#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "nhrm/trace/caps.hpp"

namespace nhrm::trace {

using Edge = std::pair<int, int>;  ///< unordered, stored with first < second

/// Closed walk of length 2p up to relabeling of its vertices. Labels are 1-based
/// and appear in first-appearance order; consecutive labels differ, including the
/// closing step from the last label back to the first.
class CycleShape {
 public:
  /// Throws BadShape unless `labels` is canonical, loop-free and of even length.
  static CycleShape from_labels(std::vector<int> labels);

  const std::vector<int>& labels() const noexcept { return labels_; }
  std::size_t length() const noexcept { return labels_.size(); }
  int vertex_count() const noexcept { return m_; }
  const std::map<Edge, int>& edge_mults() const noexcept { return mults_; }
  /// i -> number of edges traversed exactly i times.
  std::map<int, int> n_stats() const;
  bool is_even() const noexcept;
  bool is_admissible() const noexcept;

  auto operator<=>(const CycleShape& o) const { return labels_ <=> o.labels_; }
  bool operator==(const CycleShape& o) const { return labels_ == o.labels_; }

 private:
  std::vector<int> labels_;
  int m_ = 0;
  std::map<Edge, int> mults_;
};

/// Relabels a closed walk by order of first appearance (1-based).
std::vector<int> canonicalize(std::span<const int> walk);

/// Multiplicity of each unordered edge of the closed walk, closing edge included.
std::map<Edge, int> walk_edge_mults(std::span<const int> walk);

/// All shapes of length 2p with every edge traversed an even number of times,
/// lexicographically sorted.
std::vector<CycleShape> enumerate_even_shapes(unsigned p, const Caps& caps = {});
/// All shapes of length 2p with every edge traversed at least twice.
std::vector<CycleShape> enumerate_admissible_shapes(unsigned p, const Caps& caps = {});

}  // namespace nhrm::trace

#pragma once

#include <vector>

#include "nhrm/rational.hpp"
#include "nhrm/trace/caps.hpp"
#include "nhrm/trace/cycle_shape.hpp"

namespace nhrm::trace {

/// Simple graph on vertices 0..m-1 with a positive weight per edge.
class WeightedGraph {
 public:
  struct WEdge {
    int u;
    int v;
    double k;
  };

  /// Throws BadParams on loops, duplicate edges, bad endpoints or k <= 0.
  static WeightedGraph make(int m, std::vector<WEdge> edges);
  /// Underlying graph of a cycle shape with k_e = edge multiplicity.
  static WeightedGraph from_shape(const CycleShape& s);

  int vertex_count() const noexcept { return m_; }
  const std::vector<WEdge>& edges() const noexcept { return edges_; }
  bool connected() const noexcept { return connected_; }
  bool is_tree() const noexcept { return connected_ && static_cast<int>(edges_.size()) == m_ - 1; }
  double total_weight() const noexcept { return total_; }
  double min_weight() const noexcept;
  bool integral_weights() const noexcept;

 private:
  int m_ = 0;
  std::vector<WEdge> edges_;
  bool connected_ = false;
  double total_ = 0.0;
};

/// sum over all v in [n]^m of prod_e b_{v(e)}^{k_e}, coinciding vertices
/// included. The rational overload needs integral weights.
double w_of_graph(const WeightedGraph& g, const RealTable& b, const Caps& caps = {});
Rational w_of_graph(const WeightedGraph& g, const RationalTable& b, const Caps& caps = {});

/// W of a tree with its own matrix per edge (edge order as in g.edges()); weights
/// in g are ignored. Evaluated by eliminating leaves, O(m n^2).
double tree_w(const WeightedGraph& tree, const std::vector<RealTable>& edge_matrices);

}  // namespace nhrm::trace

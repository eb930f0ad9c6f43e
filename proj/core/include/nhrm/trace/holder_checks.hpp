#pragma once

#include <vector>

#include "nhrm/rational.hpp"
#include "nhrm/trace/caps.hpp"
#include "nhrm/trace/cycle_shape.hpp"
#include "nhrm/trace/weighted_graph.hpp"

namespace nhrm::trace {

/// One checked inequality lhs <= rhs. slack = rhs / lhs (1 when both vanish).
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 1.0;
  bool holds = false;
  /// Optional middle member of a chain lhs <= middle <= rhs.
  double middle = 0.0;
};

InequalityCheck make_check(double lhs, double rhs, double rel_tol);

/// Distinct-vertex sum of an even shape against
/// sigma_p^{2(m-1)} sigma_p_star^{2p-2(m-1)}; tolerance 1e-12.
InequalityCheck check_prop_holder(const CycleShape& s, const RealTable& b, unsigned p, const Caps& caps = {});

struct TreeReduction {
  /// Vertex order used (order[pos] = original vertex), parent-compatible.
  std::vector<int> order;
  /// Weights k'_2..k'_m in that order.
  std::vector<double> kprime;
  /// Parent position (1-based) of positions 2..m in the maximizing tree.
  std::vector<int> witness_parent;
  double w_graph = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// Bounds W^k(G) by the best tree with parent positions i_l <= l-1 and
/// weights k'_l; the search visits all (m-1)! parent assignments.
TreeReduction tree_reduction(const WeightedGraph& g, const RealTable& b, const Caps& caps = {});

/// W(tree) with per-edge matrices against prod_e ||b^(e)||_{l_{p_e}(l_1)}.
/// Needs sum_e 1/p_e = 1 and p_e >= 1; tolerance 1e-9.
InequalityCheck check_pruning_bound(const WeightedGraph& tree, const std::vector<RealTable>& edge_matrices,
                                    const std::vector<double>& p_weights);

/// W^k(G) <= (sum_i (sum_j b^2)^{K/2})^{2(m-1)/K} (sum_i max_j b^K)^{1-2(m-1)/K},
/// K = |k|, all k_e >= 2. `middle` is the product form over the tree weights k'.
InequalityCheck check_thm_holder(const WeightedGraph& g, const RealTable& b, const Caps& caps = {});

/// floor(sigma_p^2) + p + 1.
std::uint64_t wigner_compression_dim(double sigma_p, unsigned p);

}  // namespace nhrm::trace

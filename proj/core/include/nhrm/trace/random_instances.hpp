#pragma once

#include <vector>

#include "nhrm/random.hpp"
#include "nhrm/rational.hpp"
#include "nhrm/trace/weighted_graph.hpp"

namespace nhrm::trace {

/// Symmetric n x n table with entries a/q (q <= 6), about a quarter of them zero.
RationalTable random_rational_symmetric(Engine& rng, std::size_t n, bool zero_diagonal);
/// n x m table with entries a/q.
RationalTable random_rational_rect(Engine& rng, std::size_t n, std::size_t m);
/// Symmetric n x n table of doubles in [0, 1), zero diagonal optional.
RealTable random_real_symmetric(Engine& rng, std::size_t n, bool zero_diagonal);

/// Random connected graph on m vertices; weights are integers in [2, 4] when
/// `integral`, otherwise reals in [2, 5).
WeightedGraph random_connected_graph(Engine& rng, int m, bool integral);
WeightedGraph random_tree(Engine& rng, int m);
/// Exponents p_e >= 1 with sum 1/p_e = 1.
std::vector<double> random_conjugate_exponents(Engine& rng, std::size_t count);

}  // namespace nhrm::trace

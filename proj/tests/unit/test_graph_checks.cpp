#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nhrm/error.hpp"
#include "nhrm/random.hpp"
#include "nhrm/trace/cycle_shape.hpp"
#include "nhrm/trace/holder_checks.hpp"
#include "nhrm/trace/random_instances.hpp"
#include "nhrm/trace/trace_moment.hpp"
#include "nhrm/trace/weighted_graph.hpp"

namespace nhrm::trace {
namespace {

using WE = WeightedGraph::WEdge;

RealTable ones(std::size_t n) { return RealTable(n, n, 1.0); }

RealTable swap2() {
  RealTable t(2, 2, 0.0);
  t(0, 1) = t(1, 0) = 1;
  return t;
}

// Brute force over [n]^m by odometer, per-edge matrices.
double brute_w(const WeightedGraph& g, const std::vector<RealTable>& mats, bool use_weights) {
  const int m = g.vertex_count();
  const std::size_t n = mats[0].rows();
  std::vector<std::size_t> v(m, 0);
  double total = 0;
  while (true) {
    double term = 1;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const auto& ed = g.edges()[e];
      const double x = mats[e](v[ed.u], v[ed.v]);
      term *= use_weights ? std::pow(x, ed.k) : x;
    }
    total += term;
    int k = 0;
    while (k < m && v[k] == n - 1) v[k++] = 0;
    if (k == m) return total;
    ++v[k];
  }
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

TEST(WGraph, Examples) {
  Engine rng = make_engine(31);
  const RealTable b = random_real_symmetric(rng, 4, false);
  const auto edge = WeightedGraph::make(2, {{0, 1, 2}});
  double want = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) want += b(i, j) * b(i, j);
  EXPECT_NEAR(w_of_graph(edge, b), want, 1e-12 * want);

  const auto path = WeightedGraph::make(3, {{0, 1, 2}, {1, 2, 2}});
  want = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t l = 0; l < 4; ++l) want += b(i, j) * b(i, j) * b(j, l) * b(j, l);
  EXPECT_NEAR(w_of_graph(path, b), want, 1e-12 * want);
}

TEST(WGraph, TriangleExactAgainstTripleLoop) {
  Engine rng = make_engine(32);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalTable b = random_rational_symmetric(rng, 3, false);
    const auto tri = WeightedGraph::make(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
    Rational want = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) want += pow_int(b(i, j), 2) * pow_int(b(j, l), 2) * pow_int(b(i, l), 2);
    EXPECT_EQ(w_of_graph(tri, b), want);
  }
}

TEST(WGraph, RandomGraphsMatchBruteForce) {
  Engine rng = make_engine(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 4;
    const auto g = random_connected_graph(rng, m, trial % 2 == 0);
    const RealTable b = random_real_symmetric(rng, 3, false);
    const double want = brute_w(g, std::vector<RealTable>(g.edges().size(), b), true);
    EXPECT_NEAR(w_of_graph(g, b), want, 1e-10 * std::max(1.0, want));
  }
}

TEST(WGraph, TreeDpMatchesBruteForce) {
  Engine rng = make_engine(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 5;
    const auto t = random_tree(rng, m);
    std::vector<RealTable> mats;
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
      RealTable a(3, 3);
      std::uniform_real_distribution<double> u(0, 1);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = u(rng);  // not symmetric: orientation matters
      mats.push_back(a);
    }
    const double want = brute_w(t, mats, false);
    EXPECT_NEAR(tree_w(t, mats), want, 1e-10 * want);
  }
}

TEST(WGraph, Errors) {
  EXPECT_FALSE(WeightedGraph::make(3, {{0, 1, 2}}).connected());
  EXPECT_EQ(code_of([] { w_of_graph(WeightedGraph::make(3, {{0, 1, 2}}), ones(2)); }), ErrorCode::Disconnected);
  EXPECT_EQ(code_of([] { WeightedGraph::make(2, {{0, 0, 2}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { WeightedGraph::make(2, {{0, 1, 2}, {1, 0, 2}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { WeightedGraph::make(2, {{0, 1, 0}}); }), ErrorCode::BadWeights);
  std::vector<WE> path;
  for (int i = 0; i + 1 < 8; ++i) path.push_back({i, i + 1, 2});
  EXPECT_EQ(code_of([&] { w_of_graph(WeightedGraph::make(8, path), ones(2)); }), ErrorCode::CapExceeded);
  RationalTable r(2, 2, Rational(1));
  EXPECT_EQ(code_of([&] { w_of_graph(WeightedGraph::make(2, {{0, 1, 2.5}}), r); }), ErrorCode::BadWeights);
}

TEST(PropHolder, Examples) {
  const auto s = CycleShape::from_labels({1, 2, 1, 2});
  const auto c = check_prop_holder(s, swap2(), 2);
  EXPECT_DOUBLE_EQ(c.lhs, 2.0);
  EXPECT_NEAR(c.rhs, 2.0, 1e-12);
  EXPECT_TRUE(c.holds);
  const auto z = check_prop_holder(s, RealTable(3, 3, 0.0), 2);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_TRUE(z.holds);
}

TEST(PropHolder, AllShapesRandomProfiles) {
  Engine rng = make_engine(35);
  for (int trial = 0; trial < 10; ++trial) {
    const RealTable b = to_real(random_rational_symmetric(rng, 2 + trial % 4, true));
    for (unsigned p = 1; p <= 3; ++p)
      for (const auto& s : enumerate_even_shapes(p)) {
        const auto c = check_prop_holder(s, b, p);
        EXPECT_TRUE(c.holds) << "p=" << p << " lhs=" << c.lhs << " rhs=" << c.rhs;
        // distinct-vertex sum is part of the unconstrained W of the shape's graph
        EXPECT_LE(c.lhs, w_of_graph(WeightedGraph::from_shape(s), b) * (1 + 1e-12));
      }
  }
}

TEST(TreeReduction, FixedPointAndTriangle) {
  Engine rng = make_engine(36);
  const RealTable b = random_real_symmetric(rng, 3, false);
  const auto tree = WeightedGraph::make(4, {{0, 1, 2}, {1, 2, 3}, {1, 3, 2.5}});
  const auto r = tree_reduction(tree, b);
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.bound, r.w_graph * (1 - 1e-12));
  double sum = 0;
  for (double k : r.kprime) sum += k;
  EXPECT_DOUBLE_EQ(sum, tree.total_weight());

  const auto tri = WeightedGraph::make(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
  const auto t = tree_reduction(tri, b);
  EXPECT_EQ(t.kprime, (std::vector<double>{2, 4}));
  EXPECT_TRUE(t.holds);
}

TEST(TreeReduction, RandomGraphs) {
  Engine rng = make_engine(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 4;
    auto g = random_connected_graph(rng, m, false);
    const RealTable b = random_real_symmetric(rng, 3, trial % 2 == 0);
    const auto r = tree_reduction(g, b);
    EXPECT_TRUE(r.holds) << r.w_graph << " " << r.bound;
    double sum = 0, mn = INFINITY;
    for (double k : r.kprime) {
      sum += k;
      mn = std::min(mn, k);
    }
    EXPECT_NEAR(sum, g.total_weight(), 1e-12 * sum);
    EXPECT_GE(mn, g.min_weight() - 1e-12);
  }
}

TEST(Pruning, Examples) {
  Engine rng = make_engine(38);
  RealTable a(3, 3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  const auto edge = WeightedGraph::make(2, {{0, 1, 1}});
  const auto c = check_pruning_bound(edge, {a}, {1.0});
  EXPECT_NEAR(c.lhs, c.rhs, 1e-12 * c.rhs);
  EXPECT_TRUE(c.holds);

  const auto path = WeightedGraph::make(3, {{0, 1, 1}, {1, 2, 1}});
  const auto d = check_pruning_bound(path, {ones(2), ones(2)}, {2.0, 2.0});
  EXPECT_DOUBLE_EQ(d.lhs, 8.0);
  EXPECT_NEAR(d.rhs, 8.0, 1e-12);

  EXPECT_EQ(code_of([&] { check_pruning_bound(WeightedGraph::make(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}),
                                              {ones(2), ones(2), ones(2)}, {3, 3, 3}); }),
            ErrorCode::NotATree);
  EXPECT_EQ(code_of([&] { check_pruning_bound(path, {ones(2), ones(2)}, {2.0, 3.0}); }), ErrorCode::BadExponents);
}

TEST(Pruning, RandomTrees) {
  Engine rng = make_engine(39);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 5;
    const auto t = random_tree(rng, m);
    std::vector<RealTable> mats;
    for (int e = 0; e + 1 < m; ++e) {
      RealTable a(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = a(j, i) = u(rng);
      mats.push_back(a);
    }
    const auto c = check_pruning_bound(t, mats, random_conjugate_exponents(rng, m - 1));
    EXPECT_TRUE(c.holds) << c.lhs << " " << c.rhs;
  }
}

TEST(GraphHolder, Examples) {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto c = check_thm_holder(WeightedGraph::make(2, {{0, 1, 2 * p}}), swap2());
    EXPECT_DOUBLE_EQ(c.lhs, 2.0);
    EXPECT_NEAR(c.rhs, 2.0, 1e-12);
    EXPECT_TRUE(c.holds);
  }
  Engine rng = make_engine(40);
  const auto star = WeightedGraph::make(4, {{0, 1, 2}, {0, 2, 2}, {0, 3, 2}});
  EXPECT_TRUE(check_thm_holder(star, random_real_symmetric(rng, 3, true)).holds);
  const auto z = check_thm_holder(star, RealTable(3, 3, 0.0));
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_TRUE(z.holds);
  EXPECT_EQ(code_of([] { check_thm_holder(WeightedGraph::make(2, {{0, 1, 1.5}}), swap2()); }), ErrorCode::BadWeights);
}

TEST(GraphHolder, ChainOnRandomGraphs) {
  Engine rng = make_engine(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_connected_graph(rng, 2 + trial % 4, trial % 3 == 0);
    const auto c = check_thm_holder(g, random_real_symmetric(rng, 3, trial % 2 == 0));
    EXPECT_TRUE(c.holds);
    EXPECT_LE(c.lhs, c.middle * (1 + 1e-9));
    EXPECT_LE(c.middle, c.rhs * (1 + 1e-9));
  }
}

TEST(WignerDim, Examples) {
  EXPECT_EQ(wigner_compression_dim(3.6, 2), 15u);
  EXPECT_EQ(wigner_compression_dim(0, 1), 2u);
  EXPECT_EQ(wigner_compression_dim(1, 4), 6u);
}

}  // namespace
}  // namespace nhrm::trace

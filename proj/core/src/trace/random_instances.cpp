#include "nhrm/trace/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace nhrm::trace {

namespace {

Rational random_fraction(Engine& rng) {
  std::uniform_int_distribution<int> den(1, 6), zero(0, 3);
  if (zero(rng) == 0) return 0;
  const int q = den(rng);
  std::uniform_int_distribution<int> num(1, 2 * q);
  Rational r(num(rng), q);
  r.canonicalize();
  return r;
}

}  // namespace

RationalTable random_rational_symmetric(Engine& rng, std::size_t n, bool zero_diagonal) {
  RationalTable t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Rational x = (i == j && zero_diagonal) ? Rational(0) : random_fraction(rng);
      t(i, j) = x;
      t(j, i) = x;
    }
  return t;
}

RationalTable random_rational_rect(Engine& rng, std::size_t n, std::size_t m) {
  RationalTable t(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t(i, j) = random_fraction(rng);
  return t;
}

RealTable random_real_symmetric(Engine& rng, std::size_t n, bool zero_diagonal) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealTable t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = (i == j && zero_diagonal) ? 0.0 : u(rng);
      t(i, j) = x;
      t(j, i) = x;
    }
  return t;
}

namespace {

std::vector<WeightedGraph::WEdge> random_tree_edges(Engine& rng, int m, auto&& weight) {
  std::vector<int> label(m);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<WeightedGraph::WEdge> edges;
  for (int l = 1; l < m; ++l) {
    std::uniform_int_distribution<int> par(0, l - 1);
    edges.push_back({label[par(rng)], label[l], weight()});
  }
  return edges;
}

}  // namespace

WeightedGraph random_connected_graph(Engine& rng, int m, bool integral) {
  std::uniform_int_distribution<int> ik(2, 4);
  std::uniform_real_distribution<double> rk(2.0, 5.0);
  auto weight = [&] { return integral ? static_cast<double>(ik(rng)) : rk(rng); };
  auto edges = random_tree_edges(rng, m, weight);
  std::vector<std::vector<char>> has(m, std::vector<char>(m, 0));
  for (const auto& e : edges) has[e.u][e.v] = has[e.v][e.u] = 1;
  std::bernoulli_distribution extra(0.35);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!has[a][b] && extra(rng)) edges.push_back({a, b, weight()});
  return WeightedGraph::make(m, std::move(edges));
}

WeightedGraph random_tree(Engine& rng, int m) {
  std::uniform_int_distribution<int> ik(2, 4);
  return WeightedGraph::make(m, random_tree_edges(rng, m, [&] { return static_cast<double>(ik(rng)); }));
}

std::vector<double> random_conjugate_exponents(Engine& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(count);
  for (auto& x : w) x = u(rng);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> p(count);
  for (std::size_t e = 0; e < count; ++e) p[e] = s / w[e];
  return p;
}

}  // namespace nhrm::trace

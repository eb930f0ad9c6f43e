#include "nhrm/trace/weighted_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "nhrm/error.hpp"

namespace nhrm::trace {

WeightedGraph WeightedGraph::make(int m, std::vector<WEdge> edges) {
  if (m < 1) throw Error(ErrorCode::BadParams, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int components = m;
  WeightedGraph g;
  g.m_ = m;
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= m || e.v >= m) throw Error(ErrorCode::BadParams, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorCode::BadParams, "loops are not allowed");
    if (!(e.k > 0.0) || !std::isfinite(e.k)) throw Error(ErrorCode::BadWeights, "edge weights must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second) throw Error(ErrorCode::BadParams, "duplicate edge");
    const int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
    g.total_ += e.k;
  }
  g.edges_ = std::move(edges);
  g.connected_ = components == 1;
  return g;
}

WeightedGraph WeightedGraph::from_shape(const CycleShape& s) {
  std::vector<WEdge> edges;
  for (const auto& [e, k] : s.edge_mults()) edges.push_back({e.first - 1, e.second - 1, static_cast<double>(k)});
  return make(s.vertex_count(), std::move(edges));
}

double WeightedGraph::min_weight() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) m = std::min(m, e.k);
  return m;
}

bool WeightedGraph::integral_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const WEdge& e) { return std::floor(e.k) == e.k; });
}

namespace {

void check_caps(const WeightedGraph& g, std::size_t n, const Caps& caps) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
  if (static_cast<unsigned>(g.vertex_count()) > caps.max_graph_vertices)
    throw Error(ErrorCode::CapExceeded, "graph has more vertices than the cap");
  const double terms = std::pow(static_cast<double>(n), g.vertex_count());
  if (terms > static_cast<double>(caps.max_terms)) throw Error(ErrorCode::CapExceeded, "n^m exceeds the enumeration cap");
}

template <class T, class Pow>
T w_impl(const WeightedGraph& g, const Table<T>& b, Pow&& pw) {
  const int m = g.vertex_count();
  const std::size_t n = b.rows();
  // Powered matrices per edge, attached to the edge's later endpoint.
  struct F {
    int other;
    Table<T> mat;
  };
  std::vector<std::vector<F>> by(m);
  for (const auto& e : g.edges()) by[e.v].push_back({e.u, b.template map<T>([&](const T& x) { return pw(x, e.k); })});
  std::vector<std::size_t> v(m);
  T total(0);
  auto rec = [&](auto&& self, int pos, const T& acc) -> void {
    if (pos == m) {
      total += acc;
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      v[pos] = x;
      T next = acc;
      for (const auto& f : by[pos]) {
        next *= f.mat(v[f.other], x);
        if (next == 0) break;
      }
      if (next == 0) continue;
      self(self, pos + 1, next);
    }
  };
  rec(rec, 0, T(1));
  return total;
}

}  // namespace

double w_of_graph(const WeightedGraph& g, const RealTable& b, const Caps& caps) {
  if (!b.square()) throw Error(ErrorCode::ShapeMismatch, "profile must be square");
  check_caps(g, b.rows(), caps);
  return w_impl(g, b, [](double x, double k) { return std::pow(x, k); });
}

Rational w_of_graph(const WeightedGraph& g, const RationalTable& b, const Caps& caps) {
  if (!b.square()) throw Error(ErrorCode::ShapeMismatch, "profile must be square");
  if (!g.integral_weights()) throw Error(ErrorCode::BadWeights, "exact evaluation needs integral weights");
  check_caps(g, b.rows(), caps);
  return w_impl(g, b, [](const Rational& x, double k) { return pow_int(x, static_cast<unsigned>(k)); });
}

double tree_w(const WeightedGraph& tree, const std::vector<RealTable>& mats) {
  if (!tree.is_tree()) throw Error(ErrorCode::NotATree, "graph is not a tree");
  if (mats.size() != tree.edges().size()) throw Error(ErrorCode::ShapeMismatch, "one matrix per edge is required");
  const int m = tree.vertex_count();
  const std::size_t n = mats.empty() ? 0 : mats.front().rows();
  for (const auto& a : mats)
    if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::ShapeMismatch, "edge matrices must be n x n");
  if (m == 1) return static_cast<double>(n);

  std::vector<std::vector<std::pair<int, std::size_t>>> adj(m);
  for (std::size_t k = 0; k < tree.edges().size(); ++k) {
    const auto& e = tree.edges()[k];
    adj[e.u].push_back({e.v, k});
    adj[e.v].push_back({e.u, k});
  }
  // Root at 0; children before parents in `post`.
  std::vector<int> parent(m, -1), order;
  std::vector<std::size_t> via(m, 0);
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (auto [y, k] : adj[x])
      if (parent[y] < 0) {
        parent[y] = x;
        via[y] = k;
        stack.push_back(y);
      }
  }
  std::vector<std::vector<double>> f(m, std::vector<double>(n, 1.0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int c = *it;
    if (c == 0) break;
    const auto& e = tree.edges()[via[c]];
    const RealTable& a = mats[via[c]];
    const bool parent_is_u = e.u == parent[c];
    auto& fp = f[parent[c]];
    for (std::size_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::size_t y = 0; y < n; ++y) s += (parent_is_u ? a(x, y) : a(y, x)) * f[c][y];
      fp[x] *= s;
    }
  }
  double total = 0.0;
  for (double x : f[0]) total += x;
  return total;
}

}  // namespace nhrm::trace

#include "nhrm/trace/holder_checks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/trace/trace_moment.hpp"

namespace nhrm::trace {

InequalityCheck make_check(double lhs, double rhs, double rel_tol) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  if (lhs == 0.0)
    c.slack = rhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  else
    c.slack = rhs / lhs;
  c.holds = lhs <= rhs * (1.0 + rel_tol);
  return c;
}

namespace {

void require_profile(const RealTable& b) {
  if (!b.symmetric()) throw Error(ErrorCode::NotSymmetric, "profile must be symmetric");
}

// Sum_i (Sum_j b_ij^k)^q, all entries >= 0.
double row_power_sum(const RealTable& b, double k, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < b.cols(); ++j) r += std::pow(b(i, j), k);
    s += std::pow(r, q);
  }
  return s;
}

double row_max_power_sum(const RealTable& b, double k) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    double mx = 0.0;
    for (std::size_t j = 0; j < b.cols(); ++j) mx = std::max(mx, b(i, j));
    s += std::pow(mx, k);
  }
  return s;
}

}  // namespace

InequalityCheck check_prop_holder(const CycleShape& s, const RealTable& b, unsigned p, const Caps& caps) {
  require_profile(b);
  if (!b.zero_diagonal()) throw Error(ErrorCode::NonzeroDiagonal, "profile must have zero diagonal");
  if (!s.is_even()) throw Error(ErrorCode::BadShape, "shape must be even");
  if (s.length() != 2 * p) throw Error(ErrorCode::BadShape, "shape length differs from 2p");
  const int m = s.vertex_count();
  if (static_cast<double>(falling_factorial(static_cast<unsigned>(b.rows()), m)) > static_cast<double>(caps.max_terms))
    throw Error(ErrorCode::CapExceeded, "too many distinct assignments");
  const double lhs = distinct_assignment_sum(s, b);
  const auto sig = bounds::sigma_terms(new_profile(b, true), p);
  const double sp = sig.term("sigma_p"), star = sig.term("sigma_p_star");
  const double rhs = std::pow(sp, 2.0 * (m - 1)) * std::pow(star, 2.0 * p - 2.0 * (m - 1));
  return make_check(lhs, rhs, 1e-12);
}

namespace {

// Breadth-first order from vertex 0 with ascending neighbours: every vertex has
// an earlier neighbour, so each prefix spans a connected subgraph.
std::vector<int> bfs_order(const WeightedGraph& g) {
  const int m = g.vertex_count();
  std::vector<std::vector<int>> adj(m);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> order;
  std::vector<char> seen(m, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    order.push_back(x);
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
  }
  return order;
}

}  // namespace

TreeReduction tree_reduction(const WeightedGraph& g, const RealTable& b, const Caps& caps) {
  require_profile(b);
  TreeReduction r;
  r.w_graph = w_of_graph(g, b, caps);  // also enforces connectivity and caps
  const int m = g.vertex_count();
  const std::size_t n = b.rows();
  r.order = bfs_order(g);
  std::vector<int> pos(m);
  for (int k = 0; k < m; ++k) pos[r.order[k]] = k;
  r.kprime.assign(m > 1 ? m - 1 : 0, 0.0);
  for (const auto& e : g.edges()) {
    const int later = std::max(pos[e.u], pos[e.v]);
    r.kprime[later - 1] += e.k;
  }
  if (m == 1) {
    r.bound = static_cast<double>(n);
    r.holds = r.w_graph <= r.bound * (1.0 + 1e-9);
    return r;
  }

  std::vector<RealTable> powered;
  for (double k : r.kprime) powered.push_back(b.map<double>([k](double x) { return std::pow(x, k); }));

  // parent[l] for positions l = 1..m-1 (0-based), parent[l] in [0, l-1].
  std::vector<int> parent(m, 0);
  std::vector<std::vector<double>> f(m, std::vector<double>(n));
  double best = -1.0;
  while (true) {
    for (auto& v : f) std::fill(v.begin(), v.end(), 1.0);
    for (int l = m - 1; l >= 1; --l) {
      const RealTable& a = powered[l - 1];
      auto& fp = f[parent[l]];
      for (std::size_t x = 0; x < n; ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < n; ++y) s += a(x, y) * f[l][y];
        fp[x] *= s;
      }
    }
    double w = 0.0;
    for (double x : f[0]) w += x;
    if (w > best) {
      best = w;
      r.witness_parent.assign(m - 1, 0);
      for (int l = 1; l < m; ++l) r.witness_parent[l - 1] = parent[l] + 1;
    }
    int l = 2;
    while (l < m && ++parent[l] == l) parent[l++] = 0;
    if (l >= m) break;
  }
  r.bound = best;
  r.holds = r.w_graph <= r.bound * (1.0 + 1e-9);
  return r;
}

InequalityCheck check_pruning_bound(const WeightedGraph& tree, const std::vector<RealTable>& mats,
                                    const std::vector<double>& pw) {
  if (!tree.is_tree()) throw Error(ErrorCode::NotATree, "graph is not a tree");
  if (pw.size() != tree.edges().size() || mats.size() != tree.edges().size())
    throw Error(ErrorCode::ShapeMismatch, "need one matrix and one exponent per edge");
  double inv = 0.0;
  for (double p : pw) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponents, "exponents must be >= 1");
    inv += 1.0 / p;
  }
  if (!pw.empty() && std::abs(inv - 1.0) > 1e-12) throw Error(ErrorCode::BadExponents, "sum of 1/p_e must be 1");
  for (const auto& a : mats)
    if (!a.symmetric()) throw Error(ErrorCode::NotSymmetric, "edge matrices must be symmetric");
  const double lhs = tree_w(tree, mats);
  double rhs = 1.0;
  for (std::size_t e = 0; e < mats.size(); ++e) rhs *= std::pow(row_power_sum(mats[e], 1.0, pw[e]), 1.0 / pw[e]);
  if (mats.empty()) rhs = lhs;
  return make_check(lhs, rhs, 1e-9);
}

InequalityCheck check_thm_holder(const WeightedGraph& g, const RealTable& b, const Caps& caps) {
  require_profile(b);
  if (g.edges().empty()) throw Error(ErrorCode::BadWeights, "graph needs at least one edge");
  for (const auto& e : g.edges())
    if (e.k < 2.0) throw Error(ErrorCode::BadWeights, "all weights must be >= 2");
  const auto red = tree_reduction(g, b, caps);
  const double K = g.total_weight();
  const int m = g.vertex_count();
  const double a = row_power_sum(b, 2.0, K / 2.0);
  const double c = row_max_power_sum(b, K);
  const double t = 2.0 * (m - 1) / K;
  const double rhs = std::pow(a, t) * std::pow(c, 1.0 - t);
  double middle = 1.0;
  for (double k : red.kprime) middle *= std::pow(row_power_sum(b, k, K / k), k / K);
  auto out = make_check(red.w_graph, rhs, 1e-9);
  out.middle = middle;
  out.holds = red.w_graph <= middle * (1.0 + 1e-9) && middle <= rhs * (1.0 + 1e-9);
  return out;
}

std::uint64_t wigner_compression_dim(double sigma_p, unsigned p) {
  if (!(sigma_p >= 0.0) || !std::isfinite(sigma_p)) throw Error(ErrorCode::BadParams, "sigma_p must be finite and >= 0");
  return static_cast<std::uint64_t>(std::floor(sigma_p * sigma_p)) + p + 1;
}

}  // namespace nhrm::trace

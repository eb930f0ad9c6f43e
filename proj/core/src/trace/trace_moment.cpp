#include "nhrm/trace/trace_moment.hpp"

#include <string>

#include "nhrm/error.hpp"

namespace nhrm::trace {

namespace {

struct Factor {
  int a, b;  // 0-based shape vertices, b > a
  unsigned k;
};

// Edges grouped by their later endpoint so each factor is applied as soon as both
// endpoints are assigned.
std::vector<std::vector<Factor>> factors_by_vertex(const CycleShape& s) {
  std::vector<std::vector<Factor>> by(s.vertex_count());
  for (const auto& [e, k] : s.edge_mults())
    by[e.second - 1].push_back({e.first - 1, e.second - 1, static_cast<unsigned>(k)});
  return by;
}

template <class T>
T distinct_sum_impl(const CycleShape& s, const Table<T>& b) {
  const int m = s.vertex_count();
  const std::size_t n = b.rows();
  if (static_cast<std::size_t>(m) > n) return T(0);
  const auto by = factors_by_vertex(s);
  std::vector<std::size_t> v(m);
  std::vector<char> used(n, 0);
  T total(0);
  auto rec = [&](auto&& self, int pos, const T& acc) -> void {
    if (pos == m) {
      total += acc;
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      v[pos] = x;
      T next = acc;
      for (const auto& f : by[pos]) {
        next *= pow_int(b(v[f.a], x), f.k);
        if (next == 0) break;
      }
      if (next == 0) continue;
      used[x] = 1;
      self(self, pos + 1, next);
      used[x] = 0;
    }
  };
  rec(rec, 0, T(1));
  return total;
}

void require_symmetric_zero_diag(const RationalTable& b) {
  if (!b.symmetric()) throw Error(ErrorCode::NotSymmetric, "profile must be symmetric");
  if (!b.zero_diagonal()) throw Error(ErrorCode::NonzeroDiagonal, "profile must have zero diagonal");
}

}  // namespace

Rational distinct_assignment_sum(const CycleShape& s, const RationalTable& b) { return distinct_sum_impl(s, b); }
double distinct_assignment_sum(const CycleShape& s, const RealTable& b) { return distinct_sum_impl(s, b); }

Rational exact_trace_moment_gaussian(const RationalTable& b, unsigned p, const Caps& caps) {
  require_symmetric_zero_diag(b);
  Rational total = 0;
  for (const auto& s : enumerate_even_shapes(p, caps)) {
    Rational coeff = 1;
    for (const auto& [e, k] : s.edge_mults()) coeff *= gaussian_moment(static_cast<unsigned>(k));
    total += coeff * distinct_assignment_sum(s, b);
  }
  return total;
}

Rational direct_trace_moment_oracle(const RationalTable& b, unsigned p, const Caps& caps) {
  require_symmetric_zero_diag(b);
  const std::size_t n = b.rows();
  const std::size_t len = 2 * p;
  double count = 1.0;
  for (std::size_t t = 0; t < len; ++t) count *= static_cast<double>(n);
  if (count > static_cast<double>(caps.max_terms))
    throw Error(ErrorCode::CapExceeded, "n^{2p} = " + std::to_string(count) + " exceeds the enumeration cap");
  if (n == 0) return 0;
  std::vector<int> u(len, 0);
  Rational total = 0;
  while (true) {
    Rational term = 1;
    for (const auto& [e, k] : walk_edge_mults(u)) {
      if (k % 2 != 0) {
        term = 0;
        break;
      }
      term *= pow_int(b(e.first, e.second), static_cast<unsigned>(k)) * gaussian_moment(static_cast<unsigned>(k));
      if (term == 0) break;
    }
    total += term;
    std::size_t t = 0;
    while (t < len && ++u[t] == static_cast<int>(n)) u[t++] = 0;
    if (t == len) break;
  }
  return total;
}

std::uint64_t falling_factorial(unsigned r, unsigned m) {
  if (m > r) return 0;
  std::uint64_t out = 1;
  for (unsigned i = 0; i < m; ++i) out *= (r - i);
  return out;
}

}  // namespace nhrm::trace

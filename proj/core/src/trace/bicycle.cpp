#include "nhrm/trace/bicycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/trace/trace_moment.hpp"

namespace nhrm::trace {

namespace {

std::map<std::pair<int, int>, int> bicycle_mults(const std::vector<int>& u, const std::vector<int>& v) {
  std::map<std::pair<int, int>, int> m;
  const std::size_t p = u.size();
  for (std::size_t k = 0; k < p; ++k) {
    ++m[{u[k], v[k]}];
    ++m[{u[(k + 1) % p], v[k]}];
  }
  return m;
}

}  // namespace

BicycleShape BicycleShape::from_labels(std::vector<int> left, std::vector<int> right) {
  if (left.empty() || left.size() != right.size())
    throw Error(ErrorCode::BadShape, "left and right label sequences must have equal positive length");
  if (canonicalize(left) != left || canonicalize(right) != right)
    throw Error(ErrorCode::BadShape, "labels are not in first-appearance order");
  BicycleShape s;
  s.m2_ = *std::max_element(left.begin(), left.end());
  s.m1_ = *std::max_element(right.begin(), right.end());
  s.mults_ = bicycle_mults(left, right);
  s.left_ = std::move(left);
  s.right_ = std::move(right);
  return s;
}

bool BicycleShape::is_even() const noexcept {
  return std::all_of(mults_.begin(), mults_.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

std::vector<BicycleShape> enumerate_bicycle_shapes(unsigned p, const Caps& caps) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  if (p > caps.max_p) throw Error(ErrorCode::CapExceeded, "p = " + std::to_string(p) + " exceeds the shape cap");
  std::vector<std::vector<int>> rgs;
  std::vector<int> cur(p, 1);
  auto rec = [&](auto&& self, unsigned t, int mx) -> void {
    if (t == p) {
      rgs.push_back(cur);
      return;
    }
    for (int l = 1; l <= mx + 1; ++l) {
      cur[t] = l;
      self(self, t + 1, std::max(mx, l));
    }
  };
  rec(rec, 1, 1);
  std::vector<BicycleShape> out;
  for (const auto& u : rgs)
    for (const auto& v : rgs) {
      auto s = BicycleShape::from_labels(u, v);
      if (s.is_even()) out.push_back(std::move(s));
    }
  return out;
}

namespace {

template <class T>
T bicycle_distinct_sum(const BicycleShape& s, const Table<T>& b) {
  const int m2 = s.m2(), m1 = s.m1();
  if (static_cast<std::size_t>(m2) > b.rows() || static_cast<std::size_t>(m1) > b.cols()) return T(0);
  // Assign all left labels, then all right labels; an edge is applied once its
  // right endpoint is fixed.
  std::vector<std::vector<std::pair<int, unsigned>>> by_right(m1);
  for (const auto& [e, k] : s.edge_mults()) by_right[e.second - 1].push_back({e.first - 1, static_cast<unsigned>(k)});
  std::vector<std::size_t> lv(m2);
  std::vector<char> used_l(b.rows(), 0), used_r(b.cols(), 0);
  T total(0);
  auto right = [&](auto&& self, int pos, const T& acc) -> void {
    if (pos == m1) {
      total += acc;
      return;
    }
    for (std::size_t y = 0; y < b.cols(); ++y) {
      if (used_r[y]) continue;
      T next = acc;
      for (const auto& [l, k] : by_right[pos]) {
        next *= pow_int(b(lv[l], y), k);
        if (next == 0) break;
      }
      if (next == 0) continue;
      used_r[y] = 1;
      self(self, pos + 1, next);
      used_r[y] = 0;
    }
  };
  auto left = [&](auto&& self, int pos) -> void {
    if (pos == m2) {
      right(right, 0, T(1));
      return;
    }
    for (std::size_t x = 0; x < b.rows(); ++x) {
      if (used_l[x]) continue;
      lv[pos] = x;
      used_l[x] = 1;
      self(self, pos + 1);
      used_l[x] = 0;
    }
  };
  left(left, 0);
  return total;
}

}  // namespace

double distinct_assignment_sum(const BicycleShape& s, const RealTable& b) { return bicycle_distinct_sum(s, b); }

Rational exact_trace_moment_rect(const RationalTable& b, unsigned p, const Caps& caps) {
  Rational total = 0;
  for (const auto& s : enumerate_bicycle_shapes(p, caps)) {
    Rational coeff = 1;
    for (const auto& [e, k] : s.edge_mults()) coeff *= gaussian_moment(static_cast<unsigned>(k));
    total += coeff * bicycle_distinct_sum(s, b);
  }
  return total;
}

Rational direct_bicycle_moment_oracle(const RationalTable& b, unsigned p, const Caps& caps) {
  const std::size_t n = b.rows(), m = b.cols();
  const double count = std::pow(static_cast<double>(n) * static_cast<double>(m), p);
  if (count > static_cast<double>(caps.max_terms)) throw Error(ErrorCode::CapExceeded, "(nm)^p exceeds the enumeration cap");
  if (n == 0 || m == 0) return 0;
  std::vector<int> u(p, 0), v(p, 0);
  Rational total = 0;
  while (true) {
    Rational term = 1;
    for (const auto& [e, k] : bicycle_mults(u, v)) {
      if (k % 2 != 0) {
        term = 0;
        break;
      }
      term *= pow_int(b(e.first, e.second), static_cast<unsigned>(k)) * gaussian_moment(static_cast<unsigned>(k));
      if (term == 0) break;
    }
    total += term;
    // Odometer over u then v.
    unsigned t = 0;
    while (t < 2 * p) {
      auto& slot = t < p ? u[t] : v[t - p];
      const int lim = static_cast<int>(t < p ? n : m);
      if (++slot < lim) break;
      slot = 0;
      ++t;
    }
    if (t == 2 * p) break;
  }
  return total;
}

InequalityCheck check_prop_holderrect(const BicycleShape& s, const RealTable& b, unsigned p, const Caps& caps) {
  if (!s.is_even()) throw Error(ErrorCode::BadShape, "shape must be even");
  if (s.p() != p) throw Error(ErrorCode::BadShape, "shape length differs from 2p");
  const double combos = static_cast<double>(falling_factorial(static_cast<unsigned>(b.rows()), s.m2())) *
                        static_cast<double>(falling_factorial(static_cast<unsigned>(b.cols()), s.m1()));
  if (combos > static_cast<double>(caps.max_terms)) throw Error(ErrorCode::CapExceeded, "too many distinct assignments");
  double total = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) total += pow_int(b(i, j), 2 * p);
  if (total == 0.0) return make_check(0.0, 0.0, 1e-12);
  const double c = std::pow(total, -1.0 / (2.0 * p));
  RealTable nb = b.map<double>([c](double x) { return c * x; });
  auto sig = bounds::sigma_terms(new_profile(nb, false), p);
  if (sig.term("sigma_p1") < sig.term("sigma_p2")) {
    nb = nb.transposed();
    sig = bounds::sigma_terms(new_profile(nb, false), p);
  }
  const double lhs = distinct_assignment_sum(s, nb);
  const double rhs = std::pow(sig.term("sigma_p1"), 2.0 * s.m1()) * std::pow(sig.term("sigma_p2"), 2.0 * (s.m2() - 1));
  return make_check(lhs, rhs, 1e-12);
}

}  // namespace nhrm::trace

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/structure/decomposition.hpp"

namespace nhrm::structure {

DecompositionPlan greedy_rearrangement(const VarianceProfile& prof) {
  if (!prof.symmetric()) throw Error(ErrorCode::NotSymmetric, "greedy rearrangement needs a symmetric profile");
  const std::size_t n = prof.rows();
  const Matrix& b = prof.b();
  DecompositionPlan plan;
  plan.schedule = BlockSchedule::for_dimension(n);
  plan.partition = CellPartition(n);
  plan.perm.reserve(n);

  const auto by_rowmax = rearrange_decreasing(prof).perm;
  std::size_t cursor = 0;  // into by_rowmax, skipping chosen rows
  std::vector<char> chosen(n, 0);
  auto take = [&](std::size_t row) {
    chosen[row] = 1;
    plan.perm.push_back(row);
  };
  auto fill_by_rowmax = [&](std::size_t target) {
    std::size_t picked = 0;
    while (plan.perm.size() < target && plan.perm.size() < n) {
      while (chosen[by_rowmax[cursor]]) ++cursor;
      take(by_rowmax[cursor]);
      ++picked;
    }
    return picked;
  };

  {
    GreedyStep s{1, 0, 0, n < BlockSchedule::N(1)};
    s.picked_b = fill_by_rowmax(static_cast<std::size_t>(BlockSchedule::N(1)));
    plan.steps.push_back(s);
  }
  std::vector<std::size_t> cand;
  for (int k = 2; plan.perm.size() < n; ++k) {
    GreedyStep s{k, 0, 0, false};
    const std::size_t target = static_cast<std::size_t>(std::min<std::uint64_t>(BlockSchedule::N(k), n));
    s.truncated = BlockSchedule::N(k) > n;
    const std::size_t prev = static_cast<std::size_t>(BlockSchedule::N(k - 1));
    const std::uint64_t per_col = BlockSchedule::N(k - 2);
    for (std::size_t c = 0; c < prev && plan.perm.size() < n; ++c) {
      const std::size_t j = plan.perm[c];
      cand.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) cand.push_back(i);
      const std::size_t t = static_cast<std::size_t>(std::min<std::uint64_t>(per_col, cand.size()));
      auto larger = [&](std::size_t x, std::size_t y) { return b(x, j) > b(y, j) || (b(x, j) == b(y, j) && x < y); };
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(t), cand.end(), larger);
      for (std::size_t q = 0; q < t; ++q) take(cand[q]);
      s.picked_a += t;
    }
    s.picked_b = fill_by_rowmax(target);
    plan.steps.push_back(s);
  }

  const auto ab = bounds::expected_norm_formula(prof, PNorm::infinity());
  plan.a = ab.term("term_rows");
  plan.b = ab.term("term_logmax");
  return plan;
}

Matrix apply_permutation(const Matrix& m, const std::vector<std::size_t>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::ShapeMismatch, "matrix and permutation differ in size");
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(perm[r], perm[c]);
  return out;
}

}  // namespace nhrm::structure

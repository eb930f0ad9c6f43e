#include <algorithm>
#include <cmath>
#include <limits>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/structure/decomposition.hpp"

namespace nhrm::structure {

namespace {

double ratio(double value, double threshold) {
  if (value == 0.0) return 0.0;
  if (threshold == 0.0) return std::numeric_limits<double>::infinity();
  return value / threshold;
}

void check_plan(const VarianceProfile& prof, const DecompositionPlan& plan) {
  const std::size_t n = prof.rows();
  if (plan.perm.size() != n) throw Error(ErrorCode::PlanMismatch, "plan has a different dimension");
  std::vector<char> seen(n, 0);
  for (auto r : plan.perm) {
    if (r >= n || seen[r]) throw Error(ErrorCode::PlanMismatch, "plan permutation is not a bijection");
    seen[r] = 1;
  }
  const auto ab = bounds::expected_norm_formula(prof, PNorm::infinity());
  const auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, x, y}); };
  if (!close(ab.term("term_rows"), plan.a) || !close(ab.term("term_logmax"), plan.b))
    throw Error(ErrorCode::PlanMismatch, "plan was built for a different profile");
}

}  // namespace

CoreLemmaReport verify_core_lemma(const VarianceProfile& prof, const DecompositionPlan& plan) {
  if (!prof.symmetric()) throw Error(ErrorCode::NotSymmetric, "core lemma needs a symmetric profile");
  check_plan(prof, plan);
  const std::size_t n = prof.rows();
  const Matrix& b = prof.b();
  const auto rowmax = prof.row_max();
  CoreLemmaReport rep;
  constexpr double tol = 1e-12;
  for (int k = 1; BlockSchedule::N(k) <= n; ++k) {
    CoreLemmaLevel lv;
    lv.k = k;
    const double nprev = static_cast<double>(BlockSchedule::N(k - 1));
    lv.threshold_i = plan.b / std::sqrt(std::log(nprev));
    // (i): every entry of a row at 1-based position >= N_k; the row maximum suffices.
    for (std::size_t pos = static_cast<std::size_t>(BlockSchedule::N(k)) - 1; pos < n; ++pos) {
      lv.worst_ratio_i = std::max(lv.worst_ratio_i, ratio(rowmax[plan.perm[pos]], lv.threshold_i));
      lv.checked_i += n;
    }
    lv.threshold_ii = plan.a / std::sqrt(nprev);
    const std::uint64_t mk = BlockSchedule::M(k);
    if (mk <= n) {
      const std::size_t ncols = static_cast<std::size_t>(BlockSchedule::N(k));
      for (std::size_t cj = 0; cj < ncols; ++cj) {
        const std::size_t j = plan.perm[cj];
        for (std::size_t pos = static_cast<std::size_t>(mk) - 1; pos < n; ++pos) {
          // Symmetric profile: b_ij == b_ji, so one orientation covers both.
          lv.worst_ratio_ii = std::max(lv.worst_ratio_ii, ratio(b(plan.perm[pos], j), lv.threshold_ii));
          ++lv.checked_ii;
        }
      }
    }
    if (lv.worst_ratio_i > 1.0 + tol || lv.worst_ratio_ii > 1.0 + tol) rep.passed = false;
    rep.levels.push_back(lv);
  }
  return rep;
}

}  // namespace nhrm::structure

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/structure/decomposition.hpp"

namespace nhrm::structure {
namespace {

VarianceProfile random_sparse(std::mt19937_64& rng, int n, double density, bool continuous = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (continuous || u(rng) < density) m(i, j) = m(j, i) = u(rng);
  return new_profile(m, true);
}

TEST(Schedule, Values) {
  EXPECT_EQ(BlockSchedule::N(0), 2u);
  EXPECT_EQ(BlockSchedule::N(1), 4u);
  EXPECT_EQ(BlockSchedule::N(2), 16u);
  EXPECT_EQ(BlockSchedule::N(3), 256u);
  EXPECT_EQ(BlockSchedule::M(1), 12u);
  EXPECT_EQ(BlockSchedule::M(2), 80u);
  EXPECT_EQ(BlockSchedule::M(3), 4352u);
  for (int k = 2; k <= 4; ++k)
    EXPECT_GT(BlockSchedule::N(k) - BlockSchedule::N(k - 1) - BlockSchedule::N(k - 1) * BlockSchedule::N(k - 2), 1u);
  EXPECT_EQ(BlockSchedule::for_dimension(1).depth(), -1);
  EXPECT_EQ(BlockSchedule::for_dimension(4).depth(), 1);
  EXPECT_EQ(BlockSchedule::for_dimension(255).depth(), 2);
  EXPECT_EQ(BlockSchedule::for_dimension(256).depth(), 3);
}

TEST(Partition, Examples) {
  const auto part = partition_cells(5000, BlockSchedule::for_dimension(5000));
  EXPECT_EQ(part.classify(1, 1), CellClass::E1);
  EXPECT_EQ(part.classify(13, 13), CellClass::E2);
  EXPECT_EQ(part.classify(1, 50), CellClass::E3);
  EXPECT_EQ(part.classify(16, 4000), CellClass::E1);
  EXPECT_THROW(partition_cells(10, BlockSchedule::for_dimension(20)), Error);
}

// Membership written straight from the block unions, independent of the class's
// block lists.
CellClass oracle_class(std::size_t i, std::size_t j) {
  auto in = [&](std::uint64_t lo, std::uint64_t hi) { return i >= lo && i <= hi && j >= lo && j <= hi; };
  if (in(1, BlockSchedule::M(1))) return CellClass::E1;
  for (int k = 1; k <= 2; ++k)
    if (in(BlockSchedule::N(2 * k), BlockSchedule::M(2 * k + 1))) return CellClass::E1;
  for (int k = 1; k <= 2; ++k)
    if (in(BlockSchedule::N(2 * k - 1), BlockSchedule::M(2 * k))) return CellClass::E2;
  return CellClass::E3;
}

TEST(Partition, MatchesBlockUnionsAndIsSymmetric) {
  for (std::size_t n : {3u, 12u, 20u, 100u, 300u}) {
    const auto part = partition_cells(n, BlockSchedule::for_dimension(n));
    std::array<std::uint64_t, 3> counts{};
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const auto c = part.classify(i, j);
        EXPECT_EQ(c, oracle_class(i, j)) << i << "," << j;
        EXPECT_EQ(c, part.classify(j, i));
        ++counts[static_cast<int>(c) - 1];
      }
    EXPECT_EQ(counts, part.counts());
    EXPECT_EQ(counts[0] + counts[1] + counts[2], n * n);
  }
}

TEST(Greedy, SmallProfilesSortByRowMax) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto prof = random_sparse(rng, 1 + trial % 4, 0.6);
    const auto plan = greedy_rearrangement(prof);
    EXPECT_EQ(plan.perm, rearrange_decreasing(prof).perm);
  }
}

// Hand simulation on diag(20, 19, ..., 1): Step 1 takes rows 1-4. Step 2(a) asks
// each of columns 1-4 for its N_0 = 2 largest remaining entries; all are zero,
// so ties go to the smallest indices 5,6 then 7,8 and so on up to 12. Step 2(b)
// fills to 16 with 13-16 by row maximum, step 3 takes the rest in order.
TEST(Greedy, DiagonalHandSimulation) {
  Matrix m = Matrix::Zero(20, 20);
  for (int i = 0; i < 20; ++i) m(i, i) = 20 - i;
  const auto plan = greedy_rearrangement(new_profile(m, true));
  std::vector<std::size_t> id(20);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(plan.perm, id);
  ASSERT_GE(plan.steps.size(), 2u);
  EXPECT_EQ(plan.steps[1].picked_a, 8u);
  EXPECT_EQ(plan.steps[1].picked_b, 4u);
}

TEST(Greedy, EquivariantUnderRelabeling) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 10 + trial * 15;
    // A dominant distinct diagonal keeps row maxima tie-free, so no choice
    // depends on index order.
    Matrix m = random_sparse(rng, n, 1.0, true).b();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < n; ++i) m(i, i) = 2.0 + u(rng);
    const auto prof = new_profile(m, true);
    std::vector<std::size_t> shuffle(n);
    std::iota(shuffle.begin(), shuffle.end(), 0);
    std::shuffle(shuffle.begin(), shuffle.end(), rng);
    const auto moved = prof.permuted(shuffle);
    const auto a = prof.permuted(greedy_rearrangement(prof).perm);
    const auto b = moved.permuted(greedy_rearrangement(moved).perm);
    EXPECT_EQ(a.b(), b.b());
  }
}

TEST(Greedy, PlanInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial * 23;
    const auto prof = random_sparse(rng, n, 0.05);
    const auto plan = greedy_rearrangement(prof);
    std::vector<std::size_t> sorted = plan.perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_EQ(sorted, id);
    const auto f = bounds::expected_norm_formula(prof, PNorm::infinity());
    EXPECT_NEAR(plan.a, f.term("term_rows"), 1e-12 * std::max(1.0, plan.a));
    EXPECT_NEAR(plan.b, f.term("term_logmax"), 1e-12 * std::max(1.0, plan.b));
    // the planned profile's first four rows are already in order
    const auto planned = prof.permuted(plan.perm);
    const auto again = greedy_rearrangement(planned);
    for (int i = 0; i < std::min(n, 4); ++i) EXPECT_EQ(again.perm[i], static_cast<std::size_t>(i));
  }
}

TEST(CoreLemma, DiagonalAndRandomSparse) {
  Matrix m = Matrix::Zero(300, 300);
  for (int i = 0; i < 300; ++i) m(i, i) = 1.0 / (1 + i);
  const auto dprof = new_profile(m, true);
  const auto drep = verify_core_lemma(dprof, greedy_rearrangement(dprof));
  EXPECT_TRUE(drep.passed);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 20 + trial * 40;
    const auto prof = random_sparse(rng, n, 4.0 / n);
    const auto rep = verify_core_lemma(prof, greedy_rearrangement(prof));
    EXPECT_TRUE(rep.passed);
    for (const auto& l : rep.levels) {
      EXPECT_LE(l.worst_ratio_i, 1 + 1e-12);
      EXPECT_LE(l.worst_ratio_ii, 1 + 1e-12);
    }
  }
}

TEST(CoreLemma, RejectsForeignPlan) {
  std::mt19937_64 rng(5);
  const auto p1 = random_sparse(rng, 30, 0.3), p2 = random_sparse(rng, 30, 0.3);
  EXPECT_THROW(verify_core_lemma(p2, greedy_rearrangement(p1)), Error);
  EXPECT_THROW(verify_core_lemma(random_sparse(rng, 31, 0.3), greedy_rearrangement(p1)), Error);
}

TEST(Splits, UVW) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int n : {5, 12, 100}) {
    const auto prof = random_sparse(rng, n, 0.2);
    const auto plan = greedy_rearrangement(prof);
    Matrix x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = g(rng);
    const auto s = split_UVW(x, plan);
    EXPECT_EQ(s.U + s.V + s.W, x);
    if (n <= 12) {
      EXPECT_EQ(s.U, x);
      EXPECT_TRUE(s.V.isZero(0));
      EXPECT_TRUE(s.W.isZero(0));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto c = plan.partition.classify(i + 1, j + 1);
        EXPECT_EQ(s.U(i, j), c == CellClass::E1 ? x(i, j) : 0.0);
        EXPECT_EQ(s.V(i, j), c == CellClass::E2 ? x(i, j) : 0.0);
        EXPECT_EQ(s.W(i, j), c == CellClass::E3 ? x(i, j) : 0.0);
      }
    const PNorm inf = PNorm::infinity();
    EXPECT_LE(schatten_norm(x, inf),
              (schatten_norm(s.U, inf) + schatten_norm(s.V, inf) + schatten_norm(s.W, inf)) * (1 + 1e-12));
    // masking is idempotent
    const auto again = split_UVW(s.U, plan);
    EXPECT_EQ(again.U, s.U);
    if (n == 100) {
      ASSERT_FALSE(s.u_blocks.empty());
      EXPECT_EQ(s.u_blocks[0].dim(), 12u);
    }
  }
}

TEST(Splits, YZ) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const int n = 100;
  Matrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = g(rng);
  auto s = split_YZ(x, PNorm::finite(2));
  EXPECT_EQ(s.cutoff, 8u);
  EXPECT_EQ(s.Y + s.Z, x);
  EXPECT_TRUE(s.Z.topRows(7).isZero(0));
  EXPECT_TRUE(s.Z.leftCols(7).isZero(0));
  EXPECT_EQ(s.Z.bottomRightCorner(93, 93), x.bottomRightCorner(93, 93));
  EXPECT_LE(numerical_rank(s.Y, 1e-9), s.rank_bound);
  const double p = 2;
  EXPECT_LE(schatten_norm(s.Y, PNorm::finite(p)),
            std::pow(2.0, 1 / p) * std::exp(1.0) * schatten_norm(s.Y, PNorm::infinity()) * (1 + 1e-12));

  s = split_YZ(x, PNorm::finite(5));  // e^5 > 100
  EXPECT_TRUE(s.Z.isZero(0));
  EXPECT_EQ(s.Y, x);
  EXPECT_THROW(split_YZ(x, PNorm::infinity()), Error);
  EXPECT_THROW(split_YZ(x, PNorm::finite(1.5)), Error);
}

}  // namespace
}  // namespace nhrm::structure

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nhrm/matrix_model.hpp"
#include "nhrm/pnorm.hpp"

namespace nhrm::structure {

/// Block sizes N_k = 2^(2^k) and M_k = N_k + N_k N_{k-1}, saturating at 2^64 - 1.
class BlockSchedule {
 public:
  static BlockSchedule for_dimension(std::size_t n);

  static std::uint64_t N(int k);
  static std::uint64_t M(int k);  ///< k >= 1
  /// Largest k with N_k <= n, or -1 when n < 2.
  int depth() const noexcept { return depth_; }
  std::size_t dimension() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  int depth_ = -1;
};

enum class CellClass : std::uint8_t { E1 = 1, E2 = 2, E3 = 3 };

/// Closed 1-based index interval [first, last] defining a diagonal square block.
struct Block {
  std::size_t first;
  std::size_t last;
  CellClass cls;
  std::size_t dim() const noexcept { return last - first + 1; }
};

/// E1 = [1,M_1]^2 u U_k [N_2k, M_2k+1]^2, E2 = U_k [N_2k-1, M_2k]^2 \ E1,
/// E3 = the rest, all clipped to [1,n]^2. Classified on demand.
class CellPartition {
 public:
  explicit CellPartition(std::size_t n);

  std::size_t dimension() const noexcept { return n_; }
  /// 1-based indices.
  CellClass classify(std::size_t i, std::size_t j) const;
  const std::vector<Block>& e1_blocks() const noexcept { return e1_; }
  const std::vector<Block>& e2_blocks() const noexcept { return e2_; }
  /// Cell counts for E1, E2, E3.
  std::array<std::uint64_t, 3> counts() const;

 private:
  std::size_t n_;
  std::vector<Block> e1_, e2_;
};

CellPartition partition_cells(std::size_t n, const BlockSchedule& schedule);

struct GreedyStep {
  int k = 0;
  std::size_t picked_a = 0;  ///< column-driven picks
  std::size_t picked_b = 0;  ///< row-maximum picks
  bool truncated = false;    ///< ran out of indices before reaching N_k
};

struct DecompositionPlan {
  /// perm[pos] = original index (0-based) placed at position pos.
  std::vector<std::size_t> perm;
  BlockSchedule schedule;
  CellPartition partition{0};
  std::vector<GreedyStep> steps;
  double a = 0.0;  ///< max_i sqrt(sum_j b_ij^2)
  double b = 0.0;  ///< max_i b*_i sqrt(log i) over the decreasing rearrangement
};

/// Step 1 takes the 4 rows with largest maxima. Step k then takes, for each
/// column of I_{k-1} in selection order, the N_{k-2} largest entries among the
/// rows not yet chosen (ties and zeros go to the smaller index), and fills up
/// to N_k rows by largest row maximum. Stops when every row is placed.
DecompositionPlan greedy_rearrangement(const VarianceProfile& prof);

struct CoreLemmaLevel {
  int k = 0;
  double threshold_i = 0.0;   ///< b / sqrt(log N_{k-1})
  double worst_ratio_i = 0.0; ///< max b_ij / threshold_i over positions i >= N_k
  std::uint64_t checked_i = 0;
  double threshold_ii = 0.0;   ///< a / sqrt(N_{k-1})
  double worst_ratio_ii = 0.0; ///< over j <= N_k, i >= M_k
  std::uint64_t checked_ii = 0;
};

struct CoreLemmaReport {
  std::vector<CoreLemmaLevel> levels;
  bool passed = true;
};

/// Checks, on the profile as permuted by the plan,
///   (i)  b_ij <= b / sqrt(log N_{k-1})  for positions i >= N_k,
///   (ii) b_ij <= a / sqrt(N_{k-1})      for j <= N_k and i >= M_k.
CoreLemmaReport verify_core_lemma(const VarianceProfile& prof, const DecompositionPlan& plan);

struct UVWSplit {
  Matrix U, V, W;
  std::vector<Block> u_blocks, v_blocks;
};

/// Masks an already-permuted n x n matrix by cell class.
UVWSplit split_UVW(const Matrix& m, const DecompositionPlan& plan);

struct YZSplit {
  Matrix Y, Z;
  std::size_t cutoff = 0;      ///< ceil(e^p): Z lives on min(i,j) >= cutoff (1-based)
  std::size_t rank_bound = 0;  ///< 2 (cutoff - 1), clipped to n
};

/// Z keeps the entries with min(i,j) >= ceil(e^p), Y the rest. Rows are assumed
/// already ordered by nonincreasing row maximum.
YZSplit split_YZ(const Matrix& m, PNorm p);

Matrix apply_permutation(const Matrix& m, const std::vector<std::size_t>& perm);

}  // namespace nhrm::structure

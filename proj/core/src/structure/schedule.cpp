#include <algorithm>
#include <limits>

#include "nhrm/error.hpp"
#include "nhrm/structure/decomposition.hpp"

namespace nhrm::structure {

namespace {
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }
}  // namespace

std::uint64_t BlockSchedule::N(int k) {
  if (k < 0) return 1;
  if (k >= 6) return kMax;
  return std::uint64_t{1} << (std::uint64_t{1} << k);
}

std::uint64_t BlockSchedule::M(int k) { return sat_add(N(k), sat_mul(N(k), N(k - 1))); }

BlockSchedule BlockSchedule::for_dimension(std::size_t n) {
  BlockSchedule s;
  s.n_ = n;
  s.depth_ = -1;
  while (s.depth_ < 5 && N(s.depth_ + 1) <= n) ++s.depth_;
  return s;
}

CellPartition::CellPartition(std::size_t n) : n_(n) {
  if (n == 0) return;
  auto clip = [n](std::uint64_t x) { return static_cast<std::size_t>(std::min<std::uint64_t>(x, n)); };
  e1_.push_back({1, clip(BlockSchedule::M(1)), CellClass::E1});
  for (int k = 1; BlockSchedule::N(2 * k) <= n; ++k)
    e1_.push_back({clip(BlockSchedule::N(2 * k)), clip(BlockSchedule::M(2 * k + 1)), CellClass::E1});
  for (int k = 1; BlockSchedule::N(2 * k - 1) <= n; ++k)
    e2_.push_back({clip(BlockSchedule::N(2 * k - 1)), clip(BlockSchedule::M(2 * k)), CellClass::E2});
}

CellClass CellPartition::classify(std::size_t i, std::size_t j) const {
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  for (const auto& b : e1_)
    if (lo >= b.first && hi <= b.last) return CellClass::E1;
  for (const auto& b : e2_)
    if (lo >= b.first && hi <= b.last) return CellClass::E2;
  return CellClass::E3;
}

std::array<std::uint64_t, 3> CellPartition::counts() const {
  std::array<std::uint64_t, 3> c{0, 0, 0};
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j) ++c[static_cast<int>(classify(i, j)) - 1];
  return c;
}

CellPartition partition_cells(std::size_t n, const BlockSchedule& schedule) {
  if (schedule.dimension() != n) throw Error(ErrorCode::PlanMismatch, "schedule built for a different dimension");
  return CellPartition(n);
}

}  // namespace nhrm::structure

#pragma once

#include <map>
#include <vector>

#include "nhrm/rational.hpp"
#include "nhrm/trace/caps.hpp"
#include "nhrm/trace/cycle_shape.hpp"
#include "nhrm/trace/holder_checks.hpp"

namespace nhrm::trace {

/// Closed walk u1 v1 u2 v2 ... up vp between a left (row) and a right (column)
/// vertex class, each class relabeled by first appearance. Edges are
/// (u_k, v_k), (u_{k+1}, v_k) and the closing (u_1, v_p), keyed (left, right).
class BicycleShape {
 public:
  static BicycleShape from_labels(std::vector<int> left, std::vector<int> right);

  const std::vector<int>& left_labels() const noexcept { return left_; }
  const std::vector<int>& right_labels() const noexcept { return right_; }
  unsigned p() const noexcept { return static_cast<unsigned>(left_.size()); }
  int m1() const noexcept { return m1_; }  ///< distinct right vertices
  int m2() const noexcept { return m2_; }  ///< distinct left vertices
  const std::map<std::pair<int, int>, int>& edge_mults() const noexcept { return mults_; }
  bool is_even() const noexcept;

  bool operator==(const BicycleShape&) const = default;

 private:
  std::vector<int> left_, right_;
  int m1_ = 0, m2_ = 0;
  std::map<std::pair<int, int>, int> mults_;
};

std::vector<BicycleShape> enumerate_bicycle_shapes(unsigned p, const Caps& caps = {});

/// E Tr[(X X^T)^p] for an n x m profile by grouping over even bicycle shapes.
Rational exact_trace_moment_rect(const RationalTable& b, unsigned p, const Caps& caps = {});
/// Same by walking every (u, v) in [n]^p x [m]^p.
Rational direct_bicycle_moment_oracle(const RationalTable& b, unsigned p, const Caps& caps = {});

double distinct_assignment_sum(const BicycleShape& s, const RealTable& b);

/// Distinct-vertex sum against sigma_{p,1}^{2 m1} sigma_{p,2}^{2(m2-1)} after
/// scaling to sum b^{2p} = 1 and transposing when sigma_{p,1} < sigma_{p,2}.
/// Reported lhs/rhs are in the normalized scale.
InequalityCheck check_prop_holderrect(const BicycleShape& s, const RealTable& b, unsigned p,
                                      const Caps& caps = {});

}  // namespace nhrm::trace

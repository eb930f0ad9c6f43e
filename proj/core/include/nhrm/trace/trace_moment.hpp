#pragma once

#include <vector>

#include "nhrm/rational.hpp"
#include "nhrm/trace/caps.hpp"
#include "nhrm/trace/cycle_shape.hpp"

namespace nhrm::trace {

/// Sum over injective maps v: [m] -> [n] of prod_e b_{v(e)}^{k_e}.
Rational distinct_assignment_sum(const CycleShape& s, const RationalTable& b);
double distinct_assignment_sum(const CycleShape& s, const RealTable& b);

/// E Tr[X^{2p}] for X_ij = b_ij g_ij (symmetric, zero diagonal), grouped by
/// shape: sum_s prod_e (k_e - 1)!! * distinct_assignment_sum(s, b).
Rational exact_trace_moment_gaussian(const RationalTable& b, unsigned p, const Caps& caps = {});
/// Same expectation by walking every u in [n]^{2p}.
Rational direct_trace_moment_oracle(const RationalTable& b, unsigned p, const Caps& caps = {});

/// Number of closed walks of length 2p on [r] with shape s and distinct vertices,
/// i.e. r!/(r-m)!.
std::uint64_t falling_factorial(unsigned r, unsigned m);

}  // namespace nhrm::trace

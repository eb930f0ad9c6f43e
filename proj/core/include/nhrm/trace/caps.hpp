#pragma once

#include <cstdint>

namespace nhrm::trace {

/// Enumeration limits. Past a limit the operations throw CapExceeded instead of
/// approximating.
struct Caps {
  unsigned max_p = 5;
  std::uint64_t max_terms = 10'000'000;
  unsigned max_graph_vertices = 7;
};

}  // namespace nhrm::trace

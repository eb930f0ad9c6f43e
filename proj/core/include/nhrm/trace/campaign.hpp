#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nhrm/trace/caps.hpp"

namespace nhrm::trace {

/// One verified instance: lhs <= rhs (or lhs == rhs for identity checks).
struct CheckRecord {
  std::string check;
  std::uint64_t instance = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 1.0;
  bool holds = false;
};

using RecordSink = std::function<void(const CheckRecord&)>;

struct CampaignOptions {
  unsigned cap_p = 3;          ///< largest p for shape-based checks
  unsigned instances = 200;    ///< fuzz instances per graph check
  unsigned profiles = 30;      ///< random profiles per shape check
  std::uint64_t seed = 1;
  unsigned max_n = 5;          ///< largest profile dimension for shape checks
  int max_m = 6;               ///< largest graph size
  Caps caps{};
};

struct CampaignSummary {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
};

// Individual campaigns. Each emits one record per instance to `sink` and returns
// the tally. Instance seeds are mix_seed(seed, instance), so every line can be
// reproduced on its own.

/// Shape-grouped moment vs the direct walk, exact. p in [1, cap_p].
CampaignSummary trace_identity_campaign(const CampaignOptions& o, unsigned profiles, unsigned max_n,
                                        const RecordSink& sink);
/// Enumerated shape counts vs canonicalizing every walk of [2p]^{2p}.
CampaignSummary shape_census_campaign(const CampaignOptions& o, const RecordSink& sink);
CampaignSummary prop_holder_campaign(const CampaignOptions& o, const RecordSink& sink);
CampaignSummary thm_holder_campaign(const CampaignOptions& o, const RecordSink& sink);
CampaignSummary tree_reduction_campaign(const CampaignOptions& o, const RecordSink& sink);
CampaignSummary pruning_campaign(const CampaignOptions& o, const RecordSink& sink);
/// Rectangular moment identity and the bicycle inequality on every even shape.
CampaignSummary rect_campaign(const CampaignOptions& o, unsigned profiles, unsigned max_dim, unsigned max_p,
                              const RecordSink& sink);
CampaignSummary young_campaign(const CampaignOptions& o, const RecordSink& sink);

/// Everything above with the options' sizes.
CampaignSummary run_verification(const CampaignOptions& o, const RecordSink& sink);

std::string format_record(const CheckRecord& r);

}  // namespace nhrm::trace

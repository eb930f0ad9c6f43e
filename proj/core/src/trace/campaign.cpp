#include "nhrm/trace/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "nhrm/bounds.hpp"
#include "nhrm/random.hpp"
#include "nhrm/trace/bicycle.hpp"
#include "nhrm/trace/cycle_shape.hpp"
#include "nhrm/trace/holder_checks.hpp"
#include "nhrm/trace/random_instances.hpp"
#include "nhrm/trace/trace_moment.hpp"

namespace nhrm::trace {

namespace {

struct Tally {
  const RecordSink& sink;
  CampaignSummary s;
  void emit(CheckRecord r) {
    ++s.checked;
    if (!r.holds) ++s.failed;
    if (sink) sink(r);
  }
  void emit(const std::string& name, std::uint64_t id, const InequalityCheck& c) {
    emit(CheckRecord{name, id, c.lhs, c.rhs, c.slack, c.holds});
  }
};

CheckRecord equality(const std::string& name, std::uint64_t id, const Rational& a, const Rational& b) {
  return CheckRecord{name, id, a.get_d(), b.get_d(), a == b ? 1.0 : 0.0, a == b};
}

std::size_t pick(Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

CampaignSummary trace_identity_campaign(const CampaignOptions& o, unsigned profiles, unsigned max_n,
                                        const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned k = 0; k < profiles; ++k) {
    Engine rng = make_engine(mix_seed(o.seed, k));
    const auto b = random_rational_symmetric(rng, pick(rng, 1, max_n), true);
    for (unsigned p = 1; p <= o.cap_p; ++p)
      t.emit(equality("trace_identity_p" + std::to_string(p), k, exact_trace_moment_gaussian(b, p, o.caps),
                      direct_trace_moment_oracle(b, p, o.caps)));
  }
  return t.s;
}

CampaignSummary shape_census_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned p = 1; p <= o.cap_p; ++p) {
    const unsigned len = 2 * p;
    std::set<std::vector<int>> even, admissible;
    std::vector<int> u(len, 0);
    while (true) {
      bool loop = false;
      for (unsigned s = 0; s < len; ++s) loop |= u[s] == u[(s + 1) % len];
      if (!loop) {
        const auto mults = walk_edge_mults(u);
        const bool ev = std::all_of(mults.begin(), mults.end(), [](auto& kv) { return kv.second % 2 == 0; });
        const bool ad = std::all_of(mults.begin(), mults.end(), [](auto& kv) { return kv.second >= 2; });
        if (ev) even.insert(canonicalize(u));
        if (ad) admissible.insert(canonicalize(u));
      }
      unsigned s = 0;
      while (s < len && ++u[s] == static_cast<int>(len)) u[s++] = 0;
      if (s == len) break;
    }
    const double ne = static_cast<double>(enumerate_even_shapes(p, o.caps).size());
    const double na = static_cast<double>(enumerate_admissible_shapes(p, o.caps).size());
    t.emit(CheckRecord{"even_shape_count", p, ne, static_cast<double>(even.size()), 1.0, ne == even.size()});
    t.emit(CheckRecord{"admissible_shape_count", p, na, static_cast<double>(admissible.size()), 1.0,
                       na == admissible.size()});
  }
  return t.s;
}

CampaignSummary prop_holder_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  std::vector<std::vector<CycleShape>> shapes;
  for (unsigned p = 1; p <= o.cap_p; ++p) shapes.push_back(enumerate_even_shapes(p, o.caps));
  for (unsigned k = 0; k < o.profiles; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x50524f50ull, k));
    const auto b = to_real(random_rational_symmetric(rng, pick(rng, 1, o.max_n), true));
    for (unsigned p = 1; p <= o.cap_p; ++p)
      for (const auto& s : shapes[p - 1]) t.emit("prop_holder", k, check_prop_holder(s, b, p, o.caps));
  }
  return t.s;
}

CampaignSummary thm_holder_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned k = 0; k < o.instances; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x54484dull, k));
    const int m = static_cast<int>(pick(rng, 2, o.max_m));
    const auto g = random_connected_graph(rng, m, k % 2 == 0);
    const auto b = random_real_symmetric(rng, pick(rng, 1, 4), k % 3 == 0);
    const auto c = check_thm_holder(g, b, o.caps);
    t.emit("thm_holder", k, c);
  }
  return t.s;
}

CampaignSummary tree_reduction_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned k = 0; k < o.instances; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x54524545ull, k));
    const int m = static_cast<int>(pick(rng, 1, o.max_m));
    std::uniform_real_distribution<double> kk(0.5, 4.0);
    auto g = random_connected_graph(rng, m, k % 2 == 0);
    if (k % 4 == 1) {
      // Weights below 2 are allowed here; the reduction only needs k_e > 0.
      auto edges = g.edges();
      for (auto& e : edges) e.k = kk(rng);
      g = WeightedGraph::make(m, std::move(edges));
    }
    const auto b = random_real_symmetric(rng, pick(rng, 1, 4), false);
    const auto r = tree_reduction(g, b, o.caps);
    auto c = make_check(r.w_graph, r.bound, 1e-9);
    t.emit("tree_reduction", k, c);
  }
  return t.s;
}

CampaignSummary pruning_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned k = 0; k < o.instances; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x5052554eull, k));
    const int m = static_cast<int>(pick(rng, 2, o.max_m));
    const auto tree = random_tree(rng, m);
    const std::size_t n = pick(rng, 1, 4);
    std::vector<RealTable> mats;
    for (std::size_t e = 0; e < tree.edges().size(); ++e) mats.push_back(random_real_symmetric(rng, n, false));
    const auto pw = random_conjugate_exponents(rng, tree.edges().size());
    t.emit("pruning", k, check_pruning_bound(tree, mats, pw));
  }
  return t.s;
}

CampaignSummary rect_campaign(const CampaignOptions& o, unsigned profiles, unsigned max_dim, unsigned max_p,
                              const RecordSink& sink) {
  Tally t{sink, {}};
  std::vector<std::vector<BicycleShape>> shapes;
  for (unsigned p = 1; p <= max_p; ++p) shapes.push_back(enumerate_bicycle_shapes(p, o.caps));
  for (unsigned k = 0; k < profiles; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x52454354ull, k));
    const auto b = random_rational_rect(rng, pick(rng, 1, max_dim), pick(rng, 1, max_dim));
    const auto rb = to_real(b);
    for (unsigned p = 1; p <= max_p; ++p) {
      t.emit(equality("rect_identity_p" + std::to_string(p), k, exact_trace_moment_rect(b, p, o.caps),
                      direct_bicycle_moment_oracle(b, p, o.caps)));
      for (const auto& s : shapes[p - 1]) t.emit("prop_holderrect", k, check_prop_holderrect(s, rb, p, o.caps));
    }
  }
  return t.s;
}

CampaignSummary young_campaign(const CampaignOptions& o, const RecordSink& sink) {
  Tally t{sink, {}};
  for (unsigned k = 0; k < o.instances / 2; ++k) {
    Engine rng = make_engine(mix_seed(o.seed ^ 0x594f554eull, k));
    const auto b = to_real(random_rational_symmetric(rng, pick(rng, 1, 6), false));
    const unsigned p = static_cast<unsigned>(pick(rng, 1, 5));
    const auto y = bounds::young_equiv_check(new_profile(b, true), p);
    t.emit(CheckRecord{"young_equiv", k, y.lhs, y.rhs_traced, y.slack, y.holds});
  }
  return t.s;
}

CampaignSummary run_verification(const CampaignOptions& o, const RecordSink& sink) {
  CampaignSummary total;
  auto add = [&](const CampaignSummary& s) {
    total.checked += s.checked;
    total.failed += s.failed;
  };
  add(shape_census_campaign(o, sink));
  add(trace_identity_campaign(o, 50, std::min(o.max_n, 4u), sink));
  add(prop_holder_campaign(o, sink));
  add(thm_holder_campaign(o, sink));
  add(tree_reduction_campaign(o, sink));
  add(pruning_campaign(o, sink));
  add(rect_campaign(o, o.profiles, 3, std::min(o.cap_p, 2u), sink));
  add(young_campaign(o, sink));
  return total;
}

std::string format_record(const CheckRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %llu %.17g %.17g %.17g %s", r.check.c_str(),
                static_cast<unsigned long long>(r.instance), r.lhs, r.rhs, r.slack, r.holds ? "holds" : "FAILS");
  return buf;
}

}  // namespace nhrm::trace

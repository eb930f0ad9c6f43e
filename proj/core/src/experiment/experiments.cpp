#include "nhrm/experiment/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "nhrm/error.hpp"
#include "nhrm/random.hpp"

namespace nhrm::experiment {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ResultRow mc_row(const std::string& exp, const GeneratedProfile& gp, const std::string& model,
                 const std::string& p, const Accumulator& acc, const std::string& stat) {
  return {exp, gp.name, model, p, acc.estimate(stat), true};
}

ResultRow value_row(const std::string& exp, const GeneratedProfile& gp, const std::string& model,
                    const std::string& p, const std::string& stat, double value,
                    std::uint64_t count, double stderr_ = kNaN) {
  McEstimate e;
  e.statistic = stat;
  e.mean = value;
  e.stderr_ = stderr_;
  e.count = count;
  e.q05 = e.q50 = e.q95 = kNaN;
  return {exp, gp.name, model, p, e, false};
}

EntryModel entry_model(const ExperimentConfig& cfg, const GeneratedProfile& gp) {
  switch (cfg.model) {
    case ModelKind::Gaussian: return EntryModel::gaussian();
    case ModelKind::Heavy: return EntryModel::heavy(cfg.model_parameter);
    case ModelKind::Stable: return EntryModel::stable(cfg.model_parameter);
    case ModelKind::Bounded:
      if (!gp.sup) throw Error(ErrorCode::BadConfig, "bounded model needs entry bounds (sup_file or er)");
      return EntryModel::bounded(*gp.sup);
  }
  throw Error(ErrorCode::BadConfig, "unknown model");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

/// Per-trial norms for every p, plus the diagonal check for symmetric samples.
struct NormTrials {
  std::vector<std::vector<double>> schatten, mixed;  // [p][trial]
  std::uint64_t domination_failures = 0;
  std::uint64_t diagonal_failures = 0;
  std::string first_failure;
};

NormTrials sample_norms(const ExperimentConfig& cfg, const GeneratedProfile& gp,
                        const EntryModel& model) {
  const auto np = cfg.p_list.size();
  NormTrials out;
  out.schatten.assign(np, std::vector<double>(cfg.trials));
  out.mixed.assign(np, std::vector<double>(cfg.trials));
  std::vector<char> dom_bad(cfg.trials * np, 0), diag_bad(cfg.trials, 0);
  const double tol = cfg.gates.invariant_rel_tol;
  const bool sym = gp.profile.symmetric();

  parallel_for(cfg.trials, resolve_threads(cfg.thread_hint), [&](std::uint64_t t) {
    const Matrix x = sample(gp.profile, model, mix_seed(cfg.master_seed, t)).entries;
    const Vector s = singular_values(x);
    for (std::size_t k = 0; k < np; ++k) {
      const PNorm& p = cfg.p_list[k];
      const double sp = schatten_from_singular_values(s, p);
      const double mp = mixed_norm(x, p);
      out.schatten[k][t] = sp;
      out.mixed[k][t] = mp;
      if ((p.is_infinite() || p.value() >= 2.0) && sp < mp * (1.0 - tol)) dom_bad[t * np + k] = 1;
    }
    if (sym && x.rows() > 0) {
      const double top = s.size() ? s(0) : 0.0;
      if (top < x.diagonal().cwiseAbs().maxCoeff() * (1.0 - tol)) diag_bad[t] = 1;
    }
  });

  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    for (std::size_t k = 0; k < np; ++k)
      if (dom_bad[t * np + k]) {
        if (out.first_failure.empty())
          out.first_failure = "trial " + std::to_string(t) + " p=" + cfg.p_list[k].to_string() +
                              ": schatten " + fmt(out.schatten[k][t]) + " < mixed " +
                              fmt(out.mixed[k][t]);
        ++out.domination_failures;
      }
    if (diag_bad[t]) {
      if (out.first_failure.empty())
        out.first_failure = "trial " + std::to_string(t) + ": operator norm below max diagonal";
      ++out.diagonal_failures;
    }
  }
  return out;
}

Accumulator accumulate(const std::vector<double>& v) {
  Accumulator a;
  for (double x : v) a.add(x);
  return a;
}

/// Shared body of the norm and heavy comparisons; they differ in the formula
/// used and the gate applied to the formula ratio.
ExperimentResult compare_norms(const ExperimentConfig& cfg, const std::string& exp, bool heavy) {
  const GeneratedProfile gp = resolve_profile(cfg);
  const EntryModel model = entry_model(cfg, gp);
  const std::string tag = model.tag();
  const NormTrials nt = sample_norms(cfg, gp, model);
  const Gates& g = cfg.gates;

  ExperimentResult r;
  r.experiment = exp;
  r.checks.push_back({"per_sample_schatten_ge_mixed", nt.domination_failures == 0,
                      nt.domination_failures ? nt.first_failure : ""});
  r.checks.push_back({"per_sample_opnorm_ge_diagonal", nt.diagonal_failures == 0,
                      nt.diagonal_failures ? nt.first_failure : ""});

  const bool formula_ok = gp.profile.symmetric() &&
                          (cfg.model == ModelKind::Gaussian || cfg.model == ModelKind::Heavy);
  for (std::size_t k = 0; k < cfg.p_list.size(); ++k) {
    const PNorm& p = cfg.p_list[k];
    const std::string ps = p.to_string();
    const Accumulator as = accumulate(nt.schatten[k]), am = accumulate(nt.mixed[k]);
    r.rows.push_back(mc_row(exp, gp, tag, ps, as, "mc_schatten"));
    r.rows.push_back(mc_row(exp, gp, tag, ps, am, "mc_mixed"));
    const double ms = r.rows[r.rows.size() - 2].est.mean, mm = r.rows.back().est.mean;
    const double ratio = safe_ratio(ms, mm);
    r.rows.push_back(value_row(exp, gp, tag, ps, "schatten_mixed_ratio", ratio, cfg.trials));
    const bool big_p = p.is_infinite() || p.value() >= 2.0;
    if (big_p) {
      const bool ok = ratio >= g.schatten_mixed_ratio_min * (1.0 - g.invariant_rel_tol) &&
                      ratio <= g.schatten_mixed_ratio_max;
      r.checks.push_back({"schatten_mixed_ratio p=" + ps, ok, fmt(ratio)});
    }
    if (formula_ok && big_p) {
      const bounds::BoundReport f =
          cfg.model == ModelKind::Heavy
              ? bounds::heavy_norm_formula(gp.profile, p, cfg.model_parameter, cfg.constants)
              : bounds::expected_norm_formula(gp.profile, p, cfg.constants);
      const double fr = safe_ratio(ms, f.total);
      r.rows.push_back(value_row(exp, gp, tag, ps, "formula", f.total, cfg.trials));
      r.rows.push_back(value_row(exp, gp, tag, ps, "formula_ratio", fr, cfg.trials));
      const double lo = heavy ? g.heavy_ratio_min : g.formula_ratio_min;
      const double hi = heavy ? g.heavy_ratio_max : g.formula_ratio_max;
      r.checks.push_back({"formula_ratio p=" + ps, within(fr, lo, hi), fmt(fr)});
      r.extra["formula"][ps] = bounds::to_json(f);
    }
  }
  return r;
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const ResultRow* ExperimentResult::find(const std::string& p, const std::string& statistic) const {
  for (const auto& row : rows)
    if (row.p == p && row.est.statistic == statistic) return &row;
  return nullptr;
}

void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ExperimentResult run_norm_comparison(const ExperimentConfig& cfg) {
  return compare_norms(cfg, "norm_comparison", false);
}

ExperimentResult run_heavy_comparison(const ExperimentConfig& cfg) {
  if (cfg.model != ModelKind::Heavy)
    throw Error(ErrorCode::BadConfig, "heavy_comparison needs a heavy model");
  return compare_norms(cfg, "heavy_comparison", true);
}

ExperimentResult run_tail_comparison(const ExperimentConfig& cfg, const std::vector<double>& grid_in) {
  const std::string exp = "tail_comparison";
  const GeneratedProfile gp = resolve_profile(cfg);
  const EntryModel model = entry_model(cfg, gp);
  const std::string tag = model.tag();
  const NormTrials nt = sample_norms(cfg, gp, model);

  ExperimentResult r;
  r.experiment = exp;
  r.checks.push_back({"per_sample_schatten_ge_mixed", nt.domination_failures == 0,
                      nt.domination_failures ? nt.first_failure : ""});

  std::vector<double> cgrid;
  for (int k = 0; k <= 196; ++k) cgrid.push_back(1.0 + 0.25 * k);  // 1, 1.25, ..., 50

  for (std::size_t k = 0; k < cfg.p_list.size(); ++k) {
    const std::string ps = cfg.p_list[k].to_string();
    std::vector<double> S = nt.schatten[k], M = nt.mixed[k];
    r.rows.push_back(mc_row(exp, gp, tag, ps, accumulate(S), "mc_schatten"));
    r.rows.push_back(mc_row(exp, gp, tag, ps, accumulate(M), "mc_mixed"));
    std::sort(S.begin(), S.end());
    std::sort(M.begin(), M.end());
    const double n = static_cast<double>(S.size());
    auto tail = [n](const std::vector<double>& v, double t) {
      return static_cast<double>(v.end() - std::lower_bound(v.begin(), v.end(), t)) / n;
    };

    std::vector<double> grid = grid_in.empty() ? cfg.t_grid : grid_in;
    if (grid.empty()) {
      const double top = S.back();
      for (int i = 1; i <= 64; ++i) grid.push_back(top * i / 64.0);
    }

    std::uint64_t lower_violations = 0;
    json curve = json::array();
    for (double t : grid) {
      const double ps_t = tail(S, t), pm_t = tail(M, t);
      if (pm_t > ps_t) ++lower_violations;
      curve.push_back({{"t", t}, {"schatten_tail", ps_t}, {"mixed_tail", pm_t}});
    }

    double fitted = std::numeric_limits<double>::infinity(), binding = kNaN;
    for (double C : cgrid) {
      double worst = 0.0, worst_t = kNaN;
      bool ok = true;
      for (double t : grid) {
        const double lhs = tail(S, t), rhs = C * tail(M, t / C);
        if (lhs > rhs) {
          ok = false;
          break;
        }
        if (lhs > 0.0 && lhs / rhs > worst) {
          worst = lhs / rhs;
          worst_t = t;
        }
      }
      if (ok) {
        fitted = C;
        binding = worst_t;
        break;
      }
    }

    r.rows.push_back(value_row(exp, gp, tag, ps, "lower_sandwich_violations",
                               static_cast<double>(lower_violations), cfg.trials));
    r.rows.push_back(value_row(exp, gp, tag, ps, "fitted_C", fitted, cfg.trials));
    r.rows.push_back(value_row(exp, gp, tag, ps, "binding_t", binding, cfg.trials));
    r.checks.push_back({"lower_sandwich p=" + ps, lower_violations == 0,
                        std::to_string(lower_violations) + " grid points out of order"});
    r.checks.push_back({"fitted_C p=" + ps, fitted <= cfg.gates.tail_C_max, fmt(fitted)});
    r.extra["curves"][ps] = curve;
  }
  return r;
}

ExperimentResult run_moment_validation(const ExperimentConfig& cfg) {
  const std::string exp = "moment_validation";
  if (cfg.model == ModelKind::Heavy || cfg.model == ModelKind::Stable)
    throw Error(ErrorCode::BadConfig, "moment validation covers gaussian and bounded models");
  std::vector<unsigned> ps;
  for (const auto& p : cfg.p_list) {
    if (p.is_infinite() || !p.is_integer())
      throw Error(ErrorCode::BadConfig, "moment validation needs integer p");
    const auto v = static_cast<unsigned>(p.value());
    if (cfg.model == ModelKind::Gaussian && v > 6)
      throw Error(ErrorCode::BadParams, "gaussian moment estimation is capped at p <= 6");
    ps.push_back(v);
  }
  const GeneratedProfile gp = resolve_profile(cfg);
  const EntryModel model = entry_model(cfg, gp);
  const std::string tag = model.tag();

  std::vector<std::vector<double>> traces(ps.size(), std::vector<double>(cfg.trials));
  parallel_for(cfg.trials, resolve_threads(cfg.thread_hint), [&](std::uint64_t t) {
    const Matrix x = sample(gp.profile, model, mix_seed(cfg.master_seed, t)).entries;
    const Vector s = singular_values(x);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      double tr = 0.0;
      for (Eigen::Index i = 0; i < s.size(); ++i) tr += pow_int(s(i), 2 * ps[k]);
      traces[k][t] = tr;
    }
  });

  ExperimentResult r;
  r.experiment = exp;
  const double z = cfg.gates.mc_sigma;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const unsigned p = ps[k];
    const std::string pstr = std::to_string(p);
    const Accumulator acc = accumulate(traces[k]);
    const McEstimate e = acc.estimate("trace_moment");
    r.rows.push_back({exp, gp.name, tag, pstr, e, true});
    const double inv = 1.0 / (2.0 * p);
    const double root = std::pow(e.mean, inv);
    const double root_se = e.mean > 0.0 ? root * e.stderr_ / (2.0 * p * e.mean) : 0.0;
    const double upper = std::pow(e.mean + z * e.stderr_, inv);
    bounds::BoundReport b;
    if (cfg.model == ModelKind::Bounded) {
      const auto it = cfg.constants.find("C");
      b = bounds::bounded_moment_bound(gp.profile, *gp.sup, p, it == cfg.constants.end() ? 1.0 : it->second);
    } else {
      b = gp.profile.symmetric() ? bounds::moment_bound_symmetric(gp.profile, p, cfg.constants)
                                 : bounds::moment_bound_rect(gp.profile, p, cfg.constants);
    }
    r.rows.push_back(value_row(exp, gp, tag, pstr, "moment_root", root, cfg.trials, root_se));
    r.rows.push_back(value_row(exp, gp, tag, pstr, "moment_root_upper", upper, cfg.trials));
    r.rows.push_back(value_row(exp, gp, tag, pstr, "bound", b.total, cfg.trials));
    r.checks.push_back({"moment_bound p=" + pstr, upper <= b.total,
                        fmt(upper) + " vs " + fmt(b.total)});
    r.extra["bound"][pstr] = bounds::to_json(b);
  }
  return r;
}

ExperimentResult run_er_edge(const ErParams& prm) {
  const std::string exp = "er_edge";
  if (prm.n == 0 || !(prm.d > 0.0) || prm.d > static_cast<double>(prm.n))
    throw Error(ErrorCode::BadParams, "er_edge needs 0 < d <= n");
  if (!(prm.alpha > 0.0) || !std::isfinite(prm.alpha))
    throw Error(ErrorCode::BadParams, "alpha must be positive");
  if (prm.trials < 1) throw Error(ErrorCode::BadParams, "trials must be >= 1");
  const GeneratedProfile gp = builtin_profile("er", {{"n", prm.n}, {"d", prm.d}});
  const std::string tag = "bounded";
  const double sqrtd = std::sqrt(prm.d);

  std::vector<double> stat(prm.trials);
  parallel_for(prm.trials, resolve_threads(prm.thread_hint), [&](std::uint64_t t) {
    const Matrix a = sample_bounded(gp.profile, *gp.sup, mix_seed(prm.seed, t)).entries;
    const Vector ev = symmetric_eigenvalues(a);
    const double norm = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
    stat[t] = norm / sqrtd;
  });

  ExperimentResult r;
  r.experiment = exp;
  const Accumulator acc = accumulate(stat);
  const McEstimate e = acc.estimate("edge_ratio");
  r.rows.push_back({exp, gp.name, tag, "inf", e, true});
  const double logn = std::log(static_cast<double>(prm.n));
  const auto p = static_cast<unsigned>(std::max(1.0, std::ceil(prm.alpha * logn)));
  const bounds::BoundReport b = bounds::bounded_moment_bound(gp.profile, *gp.sup, p, prm.C);
  const double explicit_bound = 2.0 * std::exp(1.0 / (2.0 * prm.alpha)) * sqrtd +
                                prm.C * std::exp(1.0 / prm.alpha) * std::sqrt(prm.alpha * logn);
  const double z = prm.gates.mc_sigma;
  r.rows.push_back(value_row(exp, gp, tag, "inf", "ci_low", e.mean - z * e.stderr_, prm.trials));
  r.rows.push_back(value_row(exp, gp, tag, "inf", "ci_high", e.mean + z * e.stderr_, prm.trials));
  r.rows.push_back(value_row(exp, gp, tag, "inf", "bound_ratio", b.total / sqrtd, prm.trials));
  r.rows.push_back(
      value_row(exp, gp, tag, "inf", "explicit_bound_ratio", explicit_bound / sqrtd, prm.trials));
  if (prm.check_window)
    r.checks.push_back({"er_mean_window", within(e.mean, prm.gates.er_mean_min, prm.gates.er_mean_max),
                        fmt(e.mean)});
  r.extra["moment_order"] = p;
  r.extra["bound"] = bounds::to_json(b);
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "norm_comparison") return run_norm_comparison(cfg);
  if (cfg.experiment == "tail_comparison") return run_tail_comparison(cfg);
  if (cfg.experiment == "moment_validation") return run_moment_validation(cfg);
  if (cfg.experiment == "heavy_comparison") return run_heavy_comparison(cfg);
  throw Error(ErrorCode::BadConfig, "unknown experiment " + cfg.experiment +
                                        " (er_edge runs through its own entry point)");
}

}  // namespace nhrm::experiment

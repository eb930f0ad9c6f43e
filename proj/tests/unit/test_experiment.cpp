#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "nhrm/bounds.hpp"
#include "nhrm/error.hpp"
#include "nhrm/experiment/config.hpp"
#include "nhrm/experiment/estimate.hpp"
#include "nhrm/experiment/experiments.hpp"
#include "nhrm/experiment/generators.hpp"
#include "nhrm/experiment/output.hpp"
#include "nhrm/profile_io.hpp"
#include "nhrm/trace/trace_moment.hpp"

namespace nhrm::experiment {
namespace {

using nlohmann::json;

ExperimentConfig cfg_of(const json& j) { return parse_config(j); }

const ResultRow& row(const ExperimentResult& r, const std::string& p, const std::string& stat) {
  const auto* x = r.find(p, stat);
  if (!x) throw std::runtime_error("missing row " + p + " " + stat);
  return *x;
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* v) { setenv("THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("THREADS"); }
};

TEST(Accumulator, MergeReproducesSinglePass) {
  std::mt19937_64 rng(1);
  std::lognormal_distribution<double> d(0.0, 2.0);
  std::vector<double> v(1001);
  for (auto& x : v) x = d(rng);
  Accumulator all, left, right;
  for (std::size_t i = 0; i < v.size(); ++i) {
    all.add(v[i]);
    (i < 400 ? left : right).add(v[i]);
  }
  Accumulator merged = right;
  merged.merge(left);
  const auto a = all.estimate("x"), m = merged.estimate("x");
  EXPECT_EQ(a.mean, m.mean);
  EXPECT_EQ(a.stderr_, m.stderr_);
  EXPECT_EQ(a.q05, m.q05);
  EXPECT_EQ(a.q95, m.q95);
  EXPECT_EQ(m.count, 1001u);
}

TEST(Accumulator, AgreesWithTwoPassFormula) {
  const std::vector<double> v{1.5, 2.0, -3.25, 8.0, 0.125};
  Accumulator acc;
  for (double x : v) acc.add(x);
  const auto e = acc.estimate("x");
  double mean = 0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  EXPECT_DOUBLE_EQ(e.mean, mean);
  EXPECT_NEAR(e.stderr_, std::sqrt(ss / (v.size() - 1) / v.size()), 1e-15);
  EXPECT_LE(e.q05, e.q50);
  EXPECT_LE(e.q50, e.q95);
  EXPECT_DOUBLE_EQ(e.q50, 1.5);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_EQ(safe_ratio(0, 0), 1.0);
}

TEST(Generators, Examples) {
  const auto w = builtin_profile("wigner", {{"n", 3}}).profile;
  EXPECT_EQ(w.b(), Matrix::Ones(3, 3));
  const auto band0 = builtin_profile("band", {{"n", 3}, {"w", 0}}).profile;
  EXPECT_EQ(band0.b(), Matrix::Identity(3, 3));
  const auto pd = builtin_profile("power_decay", {{"n", 10}, {"gamma", 0.5}}).profile;
  EXPECT_DOUBLE_EQ(pd(3, 8), 0.5);
  EXPECT_EQ(pd(4, 4), 0.0);
  const auto dd = builtin_profile("diagonal_decay", {{"n", 4}, {"gamma", 1.0}}).profile;
  EXPECT_DOUBLE_EQ(dd(3, 3), 0.25);
  EXPECT_EQ(dd(0, 1), 0.0);
  const auto blk = builtin_profile("block", {{"sizes", {2, 1}}}).profile;
  EXPECT_EQ(blk.rows(), 3u);
  EXPECT_EQ(blk(0, 1), 1.0);
  EXPECT_EQ(blk(1, 2), 0.0);
  const auto er = builtin_profile("er", {{"n", 10}, {"d", 2}});
  ASSERT_TRUE(er.sup.has_value());
  EXPECT_DOUBLE_EQ(er.profile(0, 1), std::sqrt(0.2 * 0.8));
  EXPECT_DOUBLE_EQ((*er.sup)(0, 1), 0.8);
  EXPECT_EQ(er.profile(2, 2), 0.0);
  try {
    builtin_profile("nope", {{"n", 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGenerator);
  }
}

TEST(Config, ParsesAndValidates) {
  const auto c = cfg_of({{"profile", {{"builtin", "band"}, {"n", 10}, {"w", 2}}},
                         {"model", {{"type", "heavy"}, {"beta", 1.5}}},
                         {"p_list", {2, "inf"}},
                         {"trials", 5},
                         {"master_seed", 9},
                         {"gates", {{"tail_C_max", 7}}}});
  EXPECT_EQ(c.model, ModelKind::Heavy);
  EXPECT_EQ(c.model_parameter, 1.5);
  ASSERT_EQ(c.p_list.size(), 2u);
  EXPECT_TRUE(c.p_list[1].is_infinite());
  EXPECT_EQ(c.gates.tail_C_max, 7);
  EXPECT_EQ(c.gates.mc_sigma, 3);

  auto bad = [](json j) {
    try {
      parse_config(j);
    } catch (const Error& e) {
      return e.code() == ErrorCode::BadConfig;
    }
    return false;
  };
  const json ok = {{"profile", {{"builtin", "wigner"}, {"n", 3}}}, {"p_list", {2}}, {"trials", 1}};
  EXPECT_FALSE(bad(ok));
  json j = ok;
  j["trials"] = 0;
  EXPECT_TRUE(bad(j));
  j = ok;
  j["p_list"] = json::array();
  EXPECT_TRUE(bad(j));
  j = ok;
  j["p_list"] = {0.5};
  EXPECT_TRUE(bad(j));
  j = ok;
  j["model"] = {{"type", "cauchy"}};
  EXPECT_TRUE(bad(j));
  j = ok;
  j["gates"] = {{"nonsense", 1}};
  EXPECT_TRUE(bad(j));
  j = ok;
  j.erase("profile");
  EXPECT_TRUE(bad(j));
}

TEST(Config, ThreadsOverride) {
  EXPECT_EQ(resolve_threads(3), 3u);
  ThreadsEnv env("5");
  EXPECT_EQ(resolve_threads(3), 5u);
}

// The shipped gates file must carry exactly the values compiled into Gates.
TEST(Config, GatesFileMatchesDefaults) {
  const json file = read_json_file(std::string(NHRM_SOURCE_DIR) + "/config/gates.json");
  EXPECT_EQ(file, to_json(Gates{}));
  EXPECT_NO_THROW(gates_from_json(file));
}

TEST(Config, ConstantsFileIsUsable) {
  const json file = read_json_file(std::string(NHRM_SOURCE_DIR) + "/config/constants.json");
  ASSERT_TRUE(file.is_object());
  for (const auto& [name, consts] : file.items()) {
    if (name.rfind("_", 0) == 0) continue;
    const auto c = consts.get<bounds::Constants>();
    for (const auto& [k, v] : c) EXPECT_GT(v, 0.0) << name << "." << k;
  }
}

TEST(NormComparison, ZeroProfileRatioIsOne) {
  const auto path = std::filesystem::temp_directory_path() / "nhrm_zero_profile.json";
  save_profile(new_profile(Matrix::Zero(3, 3), true), path);
  const auto z = run_norm_comparison(
      cfg_of({{"profile", {{"file", path.string()}}}, {"p_list", {2, "inf"}}, {"trials", 3}}));
  EXPECT_EQ(row(z, "inf", "mc_schatten").est.mean, 0.0);
  EXPECT_EQ(row(z, "inf", "mc_mixed").est.mean, 0.0);
  EXPECT_EQ(row(z, "inf", "schatten_mixed_ratio").est.mean, 1.0);
  EXPECT_EQ(row(z, "2", "schatten_mixed_ratio").est.mean, 1.0);
  EXPECT_TRUE(z.passed());
}

TEST(NormComparison, ScalarHalfNormal) {
  const auto r = run_norm_comparison(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 1}}},
                                             {"p_list", {"inf"}},
                                             {"trials", 100000},
                                             {"master_seed", 4}}));
  const double want = std::sqrt(2 / M_PI);
  for (const char* stat : {"mc_schatten", "mc_mixed"}) {
    const auto& e = row(r, "inf", stat).est;
    EXPECT_NEAR(e.mean, want, 3 * e.stderr_) << stat;
  }
}

TEST(NormComparison, WignerEdge) {
  const auto r = run_norm_comparison(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 200}}},
                                             {"p_list", {"inf"}},
                                             {"trials", 60},
                                             {"master_seed", 5}}));
  const double scaled = row(r, "inf", "mc_schatten").est.mean / std::sqrt(200.0);
  EXPECT_GE(scaled, 1.9);
  EXPECT_LE(scaled, 2.15);
  EXPECT_TRUE(r.passed());
}

TEST(NormComparison, PerSampleInvariantsAcrossModels) {
  for (json model : {json{{"type", "gaussian"}}, json{{"type", "heavy"}, {"beta", 1.0}},
                     json{{"type", "stable"}, {"alpha", 1.5}}}) {
    const auto r = run_norm_comparison(cfg_of({{"profile", {{"builtin", "power_decay"}, {"n", 40}, {"gamma", 0.3}}},
                                               {"model", model},
                                               {"p_list", {2, 3, 4, "inf"}},
                                               {"trials", 30}}));
    for (const auto& c : r.checks)
      if (c.name.rfind("per_sample", 0) == 0) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
      }
  }
}

TEST(Determinism, CsvIndependentOfThreads) {
  const json j = {{"experiment", "tail_comparison"},
                  {"profile", {{"builtin", "band"}, {"n", 30}, {"w", 2}}},
                  {"p_list", {4, "inf"}},
                  {"trials", 40},
                  {"master_seed", 11},
                  {"thread_hint", 1}};
  const std::string one = to_csv(run_experiment(cfg_of(j)));
  std::string four;
  {
    ThreadsEnv env("4");
    four = to_csv(run_experiment(cfg_of(j)));
  }
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.substr(0, one.find('\n')), kCsvHeader);
}

TEST(TailComparison, ScalarFitsOne) {
  const auto r = run_tail_comparison(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 1}}},
                                             {"p_list", {"inf"}},
                                             {"trials", 1000}}));
  EXPECT_EQ(row(r, "inf", "fitted_C").est.mean, 1.0);
  EXPECT_EQ(row(r, "inf", "lower_sandwich_violations").est.mean, 0.0);
}

TEST(MomentValidation, SwapProfileExactAndMonteCarlo) {
  Matrix b(2, 2);
  b << 0, 1, 1, 0;
  const auto prof = new_profile(b, true);
  RationalTable q(2, 2, Rational(0));
  q(0, 1) = q(1, 0) = 1;
  for (unsigned p : {1u, 2u}) {
    const double root = std::pow(trace::exact_trace_moment_gaussian(q, p).get_d(), 1.0 / (2 * p));
    EXPECT_LE(root, bounds::moment_bound_symmetric(prof, p).total);
  }
  EXPECT_DOUBLE_EQ(std::pow(trace::exact_trace_moment_gaussian(q, 2).get_d(), 0.25), std::pow(6.0, 0.25));

  const auto path = std::filesystem::temp_directory_path() / "nhrm_swap_profile.json";
  save_profile(prof, path);
  const auto r = run_moment_validation(
      cfg_of({{"profile", {{"file", path.string()}}}, {"p_list", {1, 2}}, {"trials", 20000}, {"master_seed", 2}}));
  EXPECT_TRUE(r.passed());
  // E Tr X^4 = 6 within Monte Carlo error
  const auto& e = row(r, "2", "trace_moment").est;
  EXPECT_NEAR(e.mean, 6.0, 4 * e.stderr_);
}

TEST(MomentValidation, WignerHundredPThree) {
  const auto r = run_moment_validation(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 100}}},
                                               {"p_list", {3}},
                                               {"trials", 100}}));
  EXPECT_TRUE(r.passed());
  EXPECT_LE(row(r, "3", "moment_root_upper").est.mean, row(r, "3", "bound").est.mean);
}

TEST(MomentValidation, RefusesLargeGaussianP) {
  try {
    run_moment_validation(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 3}}}, {"p_list", {7}}, {"trials", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParams);
  }
}

TEST(MomentValidation, BoundedModel) {
  const auto r = run_moment_validation(cfg_of({{"profile", {{"builtin", "er"}, {"n", 60}, {"d", 6}}},
                                               {"model", {{"type", "bounded"}}},
                                               {"p_list", {2, 8}},
                                               {"trials", 50},
                                               {"constants", {{"C", 5}}}}));
  EXPECT_TRUE(r.passed());
}

TEST(HeavyComparison, ScalarExponentialMean) {
  const auto r = run_heavy_comparison(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 1}}},
                                              {"model", {{"type", "heavy"}, {"beta", 1.0}}},
                                              {"p_list", {"inf"}},
                                              {"trials", 20000}}));
  const auto& e = row(r, "inf", "mc_schatten").est;
  EXPECT_NEAR(e.mean, 1.0, 3 * e.stderr_);
  EXPECT_EQ(e.mean, row(r, "inf", "mc_mixed").est.mean);
}

TEST(HeavyComparison, HalfMatchesGaussianPath) {
  const json base = {{"profile", {{"builtin", "band"}, {"n", 20}, {"w", 1}}}, {"p_list", {"inf"}}, {"trials", 10}};
  json heavy = base;
  heavy["model"] = {{"type", "heavy"}, {"beta", 0.5}};
  const auto h = run_heavy_comparison(cfg_of(heavy));
  const auto g = run_norm_comparison(cfg_of(base));
  EXPECT_EQ(row(h, "inf", "formula").est.mean, row(g, "inf", "formula").est.mean);
}

TEST(ErEdge, DegenerateAndErrors) {
  ErParams p;
  p.n = 10;
  p.d = 10;
  p.trials = 3;
  const auto r = run_er_edge(p);
  EXPECT_EQ(r.rows[0].est.mean, 0.0);
  p.d = 11;
  EXPECT_THROW(run_er_edge(p), Error);
  p.d = 0;
  EXPECT_THROW(run_er_edge(p), Error);
}

TEST(ErEdge, SmallGraphIsNearEdge) {
  ErParams p;
  p.n = 300;
  p.d = 30;
  p.trials = 5;
  p.seed = 8;
  const auto r = run_er_edge(p);
  const double m = r.rows[0].est.mean;
  EXPECT_GT(m, 1.5);
  EXPECT_LT(m, 2.5);
  EXPECT_GT(row(r, "inf", "bound_ratio").est.mean, m);
}

TEST(Output, CsvAndJsonShape) {
  const auto r = run_norm_comparison(cfg_of({{"profile", {{"builtin", "wigner"}, {"n", 4}}},
                                             {"p_list", {2}},
                                             {"trials", 3}}));
  const std::string csv = to_csv(r);
  EXPECT_NE(csv.find("norm_comparison,wigner(n=4),gaussian,2,mc_schatten,"), std::string::npos);
  const json j = to_json(r);
  EXPECT_EQ(j["rows"].size(), r.rows.size());
  EXPECT_EQ(j["passed"], r.passed());
}

}  // namespace
}  // namespace nhrm::experiment

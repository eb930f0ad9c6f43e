#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <utility>

#include "nhrm/matrix_model.hpp"
#include "nhrm/pnorm.hpp"
#include "nhrm/rational.hpp"

namespace nhrm::bounds {

/// Overrides for the multipliers of a report's terms, keyed by term name.
/// Anything not overridden keeps the evaluator's default.
using Constants = std::map<std::string, double>;

/// A closed-form bound split into additive terms. total = sum over terms of
/// constants_used[name] * terms[name]; `details` holds auxiliary quantities that
/// do not enter the total.
struct BoundReport {
  std::string theorem;
  PNorm p = PNorm::infinity();
  std::map<std::string, double> terms;
  std::map<std::string, double> constants_used;
  std::map<std::string, double> details;
  double total = 0.0;

  double term(const std::string& name) const { return terms.at(name); }
};

/// Recomputes total from terms and constants_used.
double recompute_total(const BoundReport& r);
nlohmann::json to_json(const BoundReport& r);
BoundReport report_from_json(const nlohmann::json& j);

/// Integer power sums that every sigma quantity is built from; exact for
/// rational input.
template <class T>
struct PowerSums {
  T rows;          ///< sum_i (sum_j b_ij^2)^p
  T cols;          ///< sum_j (sum_i b_ij^2)^p
  T star;          ///< sum_i max_j b_ij^(2p)
  T star_offdiag;  ///< sum_i max_{j != i} b_ij^(2p)
  T entries;       ///< sum_ij b_ij^(2p)
  T diagonal;      ///< sum_i b_ii^(2p)
};

PowerSums<Rational> power_sums(const RationalTable& b, unsigned p);
PowerSums<double> power_sums(const RealTable& b, unsigned p);

/// sigma_p, sigma_p_star, sigma_p1 (rows), sigma_p2 (columns) and the entrywise
/// 2p-norm. Total is sigma_p.
BoundReport sigma_terms(const VarianceProfile& prof, unsigned p);
/// Same quantities from exact power sums; only the final roots are floating.
BoundReport sigma_terms(const RationalTable& b, bool symmetric, unsigned p);

/// 2 sigma_p + 5 sqrt(2p) sigma_p_star. details carries the zero-diagonal split
/// 2 sigma_p + 4 sqrt(2p) sigma_p_star(offdiag) + sqrt(2p) (sum_i b_ii^2p)^(1/2p).
BoundReport moment_bound_symmetric(const VarianceProfile& prof, unsigned p, const Constants& c = {});
/// sigma_p1 + sigma_p2 + 4 sqrt(p) (sum_ij b_ij^2p)^(1/2p).
BoundReport moment_bound_rect(const VarianceProfile& prof, unsigned p, const Constants& c = {});
/// Mixed l_p(l_2) norm + sqrt(p) (sum_ij b_ij^p)^(1/p); any real p >= 2.
BoundReport moment_equiv(const VarianceProfile& prof, double p, const Constants& c = {});

struct YoungCheck {
  double lhs = 0.0;         ///< (sum_ij b_ij^2p)^(1/2p)
  double rhs_traced = 0.0;  ///< bound with the explicit Young constants
  double rhs_k = 0.0;       ///< K (e^-p sigma_p + sigma_p_star), K = e
  double k = 0.0;
  double slack = 0.0;       ///< rhs_traced / lhs
  bool holds = false;
};

/// Entrywise 2p-norm against e^-p sigma_p + sigma_p_star, with the constant
/// obtained from Young's inequality at a = e^{-2(p-1)}.
YoungCheck young_equiv_check(const VarianceProfile& prof, unsigned p);

/// Mixed norm + max_{i <= floor(e^p)} b*_i sqrt(log i) + sqrt(p) (sum_{i >= ceil(e^p)} b*_i^p)^(1/p),
/// b*_i the rearranged row maxima (log i, not log(i+1)). At p = inf the tail term
/// is absent and the max runs over all rows.
BoundReport expected_norm_formula(const VarianceProfile& prof, PNorm p, const Constants& c = {});
/// Heavy-tail analogue: sqrt(log i) -> (log i)^beta, sqrt(p) -> p^beta.
BoundReport heavy_norm_formula(const VarianceProfile& prof, PNorm p, double beta, const Constants& c = {});

/// E||g||_p for independent g_i ~ N(0, sigma_i^2), up to constants; uses log(i+1).
double gaussian_vector_lp_formula(std::span<const double> sigmas, PNorm p);

/// max row norm + max b_ij sqrt(log n).
BoundReport dimension_dependent_bound(const VarianceProfile& prof, const Constants& c = {});
/// max row norm + max_i b*_i log i.
BoundReport dimension_free_logi_bound(const VarianceProfile& prof, const Constants& c = {});

/// Bounded-entry moment bound: 2 sigma_p(var) + C sqrt(p) sigma_star(sup)
/// (rectangular: sigma_p1 + sigma_p2 + C sqrt(p) sigma_star), with
/// sigma_star = (sum_ij sup_ij^2p)^(1/2p).
BoundReport bounded_moment_bound(const VarianceProfile& var, const VarianceProfile& sup, unsigned p,
                                 double C);

/// exp(-t^2 / (C maxsup^2)): probability that the 2p-Schatten norm exceeds
/// bound_value + t.
double bounded_tail_bound(double bound_value, double t, double maxsup, double C);

struct BoundednessConditions {
  double cond_rowsum = 0.0;   ///< max_i sum_j b_ij^2
  double cond_logmax = 0.0;   ///< max_i b*_i sqrt(log i)
  double cond_opnorm = 0.0;   ///< operator norm of the mean
  /// All three finite on this truncation. Says nothing about the infinite matrix.
  bool bounded_at_truncation = false;
};

BoundednessConditions boundedness_conditions(const VarianceProfile& prof, const Matrix& mean);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Two-sided estimate of E||A + X|| from ||A|| and E||X||.
Interval noncentered_combine(double meannorm, double centered);

}  // namespace nhrm::bounds

#include "nhrm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nhrm/error.hpp"

namespace nhrm::bounds {

namespace {

double get(const Constants& c, const std::string& key, double fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

// Total is always produced by recompute_total so the two can never drift.
struct Builder {
  BoundReport r;

  Builder(std::string theorem, PNorm p) {
    r.theorem = std::move(theorem);
    r.p = p;
  }
  void term(const std::string& name, double value, double constant) {
    r.terms[name] = value;
    r.constants_used[name] = constant;
  }
  BoundReport finish() {
    r.total = recompute_total(r);
    return std::move(r);
  }
};

void require_symmetric(const VarianceProfile& p) {
  if (!p.symmetric()) throw Error(ErrorCode::NotSymmetric, "evaluator needs a symmetric profile");
}

std::vector<double> row_sq(const Matrix& b) {
  std::vector<double> v(static_cast<std::size_t>(b.rows()));
  for (Eigen::Index i = 0; i < b.rows(); ++i) v[i] = b.row(i).squaredNorm();
  return v;
}

std::vector<double> col_sq(const Matrix& b) {
  std::vector<double> v(static_cast<std::size_t>(b.cols()));
  for (Eigen::Index j = 0; j < b.cols(); ++j) v[j] = b.col(j).squaredNorm();
  return v;
}

std::span<const double> all_entries(const Matrix& b) {
  return {b.data(), static_cast<std::size_t>(b.size())};
}

PNorm pn(double p) { return PNorm::finite(p); }

// (log i)^beta with the square root taken exactly when beta = 1/2, so the heavy
// formula at beta = 1/2 and the Gaussian formula share every bit.
double log_power(std::size_t i, double beta) {
  const double l = std::log(static_cast<double>(i));
  return beta == 0.5 ? std::sqrt(l) : std::pow(l, beta);
}

double p_power(double p, double beta) { return beta == 0.5 ? std::sqrt(p) : std::pow(p, beta); }

// Number of indices i in [1, n] with i <= floor(e^p); the tail starts at ceil(e^p).
struct Cutoff {
  std::size_t head_end;   // last 1-based index of the head (clipped to n)
  std::size_t tail_begin; // first 1-based index of the tail (may exceed n)
};

Cutoff cutoff(double p, std::size_t n) {
  if (p >= std::log(static_cast<double>(n) + 1.0) + 1.0) return {n, n + 1};
  const double e = std::exp(p);
  const auto fl = static_cast<std::size_t>(std::floor(e));
  const auto ce = static_cast<std::size_t>(std::ceil(e));
  return {std::min(fl, n), ce};
}

BoundReport rearranged_formula(const std::string& name, const VarianceProfile& prof, PNorm p, double beta,
                               const Constants& c) {
  require_symmetric(prof);
  if (!p.is_infinite() && p.value() < 2.0) throw Error(ErrorCode::BadP, "formula needs p >= 2");
  const auto rr = rearrange_decreasing(prof);
  const std::size_t n = prof.rows();
  Builder b(name, p);
  b.term("term_rows", mixed_norm(prof.b(), p), get(c, "term_rows", 1.0));
  const Cutoff cut = p.is_infinite() ? Cutoff{n, n + 1} : cutoff(p.value(), n);
  double logmax = 0.0;
  for (std::size_t i = 2; i <= cut.head_end; ++i) logmax = std::max(logmax, rr.rowmax[i - 1] * log_power(i, beta));
  b.term("term_logmax", logmax, get(c, "term_logmax", 1.0));
  if (!p.is_infinite()) {
    double tail = 0.0;
    if (cut.tail_begin <= n) {
      std::span<const double> t(rr.rowmax.data() + (cut.tail_begin - 1), n - cut.tail_begin + 1);
      tail = p_power(p.value(), beta) * lp_norm(t, p);
    }
    b.term("term_tailsum", tail, get(c, "term_tailsum", 1.0));
  }
  b.r.details["head_end"] = static_cast<double>(cut.head_end);
  b.r.details["tail_begin"] = static_cast<double>(cut.tail_begin);
  if (name == "heavy_norm_formula") b.r.details["beta"] = beta;
  return b.finish();
}

template <class T>
T square(const T& x) {
  return x * x;
}

}  // namespace

double recompute_total(const BoundReport& r) {
  double total = 0.0;
  for (const auto& [name, value] : r.terms) total += r.constants_used.at(name) * value;
  return total;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["theorem"] = r.theorem;
  if (r.p.is_infinite())
    j["p"] = "inf";
  else
    j["p"] = r.p.value();
  j["terms"] = r.terms;
  j["constants_used"] = r.constants_used;
  if (!r.details.empty()) j["details"] = r.details;
  j["total"] = r.total;
  return j;
}

BoundReport report_from_json(const nlohmann::json& j) {
  BoundReport r;
  r.theorem = j.at("theorem").get<std::string>();
  const auto& p = j.at("p");
  r.p = p.is_string() ? PNorm::parse(p.get<std::string>()) : PNorm::finite(p.get<double>());
  r.terms = j.at("terms").get<std::map<std::string, double>>();
  r.constants_used = j.at("constants_used").get<std::map<std::string, double>>();
  if (j.contains("details")) r.details = j.at("details").get<std::map<std::string, double>>();
  r.total = j.at("total").get<double>();
  return r;
}

template <class T>
static PowerSums<T> power_sums_impl(const Table<T>& b, unsigned p) {
  PowerSums<T> s{T(0), T(0), T(0), T(0), T(0), T(0)};
  const unsigned two_p = 2 * p;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    T row(0), mx(0), mx_off(0);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const T& x = b(i, j);
      row += square(x);
      const T xp = pow_int(x, two_p);
      s.entries += xp;
      if (xp > mx) mx = xp;
      if (i == j)
        s.diagonal += xp;
      else if (xp > mx_off)
        mx_off = xp;
    }
    s.rows += pow_int(row, p);
    s.star += mx;
    s.star_offdiag += mx_off;
  }
  for (std::size_t j = 0; j < b.cols(); ++j) {
    T col(0);
    for (std::size_t i = 0; i < b.rows(); ++i) col += square(b(i, j));
    s.cols += pow_int(col, p);
  }
  return s;
}

PowerSums<Rational> power_sums(const RationalTable& b, unsigned p) { return power_sums_impl(b, p); }
PowerSums<double> power_sums(const RealTable& b, unsigned p) { return power_sums_impl(b, p); }

BoundReport sigma_terms(const VarianceProfile& prof, unsigned p) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  const Matrix& b = prof.b();
  const auto rs = row_sq(b);
  const double sp = std::sqrt(lp_norm(rs, pn(p)));
  const auto rm = prof.row_max();
  Builder out("sigma_terms", pn(p));
  out.term("sigma_p", sp, 1.0);
  out.term("sigma_p_star", lp_norm(rm, pn(2.0 * p)), 0.0);
  out.term("sigma_p1", sp, 0.0);
  out.term("sigma_p2", prof.symmetric() ? sp : std::sqrt(lp_norm(col_sq(b), pn(p))), 0.0);
  out.term("sigma_p_entry", lp_norm(all_entries(b), pn(2.0 * p)), 0.0);
  return out.finish();
}

BoundReport sigma_terms(const RationalTable& b, bool symmetric, unsigned p) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  if (symmetric && !b.symmetric()) throw Error(ErrorCode::AsymmetricEntries, "table is not symmetric");
  const auto s = power_sums(b, p);
  const double inv = 1.0 / (2.0 * p);
  const double sp = std::pow(s.rows.get_d(), inv);
  Builder out("sigma_terms", pn(p));
  out.term("sigma_p", sp, 1.0);
  out.term("sigma_p_star", std::pow(s.star.get_d(), inv), 0.0);
  out.term("sigma_p1", sp, 0.0);
  out.term("sigma_p2", symmetric ? sp : std::pow(s.cols.get_d(), inv), 0.0);
  out.term("sigma_p_entry", std::pow(s.entries.get_d(), inv), 0.0);
  return out.finish();
}

BoundReport moment_bound_symmetric(const VarianceProfile& prof, unsigned p, const Constants& c) {
  require_symmetric(prof);
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  const auto s = sigma_terms(prof, p);
  const double sp = s.term("sigma_p"), star = s.term("sigma_p_star");
  const double r2p = std::sqrt(2.0 * p);
  Builder out("moment_bound_symmetric", pn(p));
  out.term("sigma_p", sp, get(c, "sigma_p", 2.0));
  out.term("sqrt2p_sigma_p_star", r2p * star, get(c, "sqrt2p_sigma_p_star", 5.0));

  const Matrix& b = prof.b();
  std::vector<double> off_max(prof.rows(), 0.0), diag(prof.rows(), 0.0);
  for (std::size_t i = 0; i < prof.rows(); ++i) {
    diag[i] = b(i, i);
    for (std::size_t j = 0; j < prof.cols(); ++j)
      if (j != i) off_max[i] = std::max(off_max[i], b(i, j));
  }
  const double star_off = lp_norm(off_max, pn(2.0 * p));
  const double diag_term = lp_norm(diag, pn(2.0 * p));
  out.r.details["sigma_p_star"] = star;
  out.r.details["sigma_p_star_offdiag"] = star_off;
  out.r.details["diag_term"] = diag_term;
  out.r.details["split_total"] = 2.0 * sp + 4.0 * r2p * star_off + r2p * diag_term;
  return out.finish();
}

BoundReport moment_bound_rect(const VarianceProfile& prof, unsigned p, const Constants& c) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  const auto s = sigma_terms(prof, p);
  Builder out("moment_bound_rect", pn(p));
  out.term("sigma_p1", s.term("sigma_p1"), get(c, "sigma_p1", 1.0));
  out.term("sigma_p2", s.term("sigma_p2"), get(c, "sigma_p2", 1.0));
  out.term("sqrtp_sigma_entry", std::sqrt(static_cast<double>(p)) * s.term("sigma_p_entry"),
           get(c, "sqrtp_sigma_entry", 4.0));
  return out.finish();
}

BoundReport moment_equiv(const VarianceProfile& prof, double p, const Constants& c) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorCode::BadP, "moment_equiv needs finite p >= 2");
  Builder out("moment_equiv", pn(p));
  out.term("term_mixed", mixed_norm(prof.b(), pn(p)), get(c, "term_mixed", 1.0));
  out.term("sqrtp_entry_p", std::sqrt(p) * lp_norm(all_entries(prof.b()), pn(p)), get(c, "sqrtp_entry_p", 1.0));
  return out.finish();
}

YoungCheck young_equiv_check(const VarianceProfile& prof, unsigned p) {
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  const auto s = sigma_terms(prof, p);
  const double sp = s.term("sigma_p"), star = s.term("sigma_p_star");
  const double P = p;
  YoungCheck y;
  y.lhs = s.term("sigma_p_entry");
  // sum b^2p <= sum_i (sum_j b^2) max_j b^(2p-2)
  //          <= (a^p / p) sigma_p^2p + ((p-1) / (p a^(p/(p-1)))) sigma_star^2p,  a = e^{-2(p-1)}
  // evaluated in logs; the 2p-th root of the sum is the traced bound.
  const double ninf = -std::numeric_limits<double>::infinity();
  const double la = sp > 0 ? -2.0 * P * (P - 1.0) - std::log(P) + 2.0 * P * std::log(sp) : ninf;
  const double lb = (p > 1 && star > 0) ? std::log((P - 1.0) / P) + 2.0 * P + 2.0 * P * std::log(star) : ninf;
  const double hi = std::max(la, lb);
  y.rhs_traced = hi == ninf ? 0.0 : std::exp((hi + std::log(std::exp(la - hi) + std::exp(lb - hi))) / (2.0 * P));
  y.k = std::numbers::e;
  y.rhs_k = y.k * (std::exp(-P) * sp + star);
  y.slack = y.lhs == 0.0 ? (y.rhs_traced == 0.0 ? 1.0 : std::numeric_limits<double>::infinity())
                         : y.rhs_traced / y.lhs;
  y.holds = y.lhs <= y.rhs_traced * (1.0 + 1e-12) && y.rhs_traced <= y.rhs_k * (1.0 + 1e-12);
  return y;
}

BoundReport expected_norm_formula(const VarianceProfile& prof, PNorm p, const Constants& c) {
  return rearranged_formula("expected_norm_formula", prof, p, 0.5, c);
}

BoundReport heavy_norm_formula(const VarianceProfile& prof, PNorm p, double beta, const Constants& c) {
  if (!(beta >= 0.5) || !std::isfinite(beta)) throw Error(ErrorCode::BadBeta, "beta must be >= 1/2");
  return rearranged_formula("heavy_norm_formula", prof, p, beta, c);
}

double gaussian_vector_lp_formula(std::span<const double> sigmas, PNorm p) {
  if (!p.is_infinite() && p.value() < 2.0) throw Error(ErrorCode::BadP, "formula needs p >= 2");
  std::vector<double> s(sigmas.begin(), sigmas.end());
  for (double x : s)
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::BadParams, "sigmas must be finite and >= 0");
  std::sort(s.begin(), s.end(), std::greater<>());
  const std::size_t n = s.size();
  const Cutoff cut = p.is_infinite() ? Cutoff{n, n + 1} : cutoff(p.value(), n);
  double head = 0.0;
  for (std::size_t i = 1; i <= cut.head_end; ++i)
    head = std::max(head, s[i - 1] * std::sqrt(std::log(static_cast<double>(i) + 1.0)));
  double tail = 0.0;
  if (!p.is_infinite() && cut.tail_begin <= n)
    tail = std::sqrt(p.value()) *
           lp_norm(std::span<const double>(s.data() + (cut.tail_begin - 1), n - cut.tail_begin + 1), p);
  return head + tail;
}

BoundReport dimension_dependent_bound(const VarianceProfile& prof, const Constants& c) {
  require_symmetric(prof);
  const Matrix& b = prof.b();
  const double n = static_cast<double>(prof.rows());
  Builder out("dimension_dependent_bound", PNorm::infinity());
  out.term("term_rows", mixed_norm(b, PNorm::infinity()), get(c, "term_rows", 1.0));
  const double mx = b.size() ? b.maxCoeff() : 0.0;
  out.term("term_logn", n > 0 ? mx * std::sqrt(std::log(n)) : 0.0, get(c, "term_logn", 1.0));
  return out.finish();
}

BoundReport dimension_free_logi_bound(const VarianceProfile& prof, const Constants& c) {
  require_symmetric(prof);
  const auto rr = rearrange_decreasing(prof);
  Builder out("dimension_free_logi_bound", PNorm::infinity());
  out.term("term_rows", mixed_norm(prof.b(), PNorm::infinity()), get(c, "term_rows", 1.0));
  double m = 0.0;
  for (std::size_t i = 2; i <= rr.rowmax.size(); ++i)
    m = std::max(m, rr.rowmax[i - 1] * std::log(static_cast<double>(i)));
  out.term("term_logi", m, get(c, "term_logi", 1.0));
  return out.finish();
}

BoundReport bounded_moment_bound(const VarianceProfile& var, const VarianceProfile& sup, unsigned p, double C) {
  if (var.rows() != sup.rows() || var.cols() != sup.cols())
    throw Error(ErrorCode::ShapeMismatch, "var and sup differ in shape");
  if (p < 1) throw Error(ErrorCode::BadP, "p must be >= 1");
  if (!(C >= 0.0) || !std::isfinite(C)) throw Error(ErrorCode::BadParams, "C must be finite and >= 0");
  if ((var.b().array() > sup.b().array()).any()) throw Error(ErrorCode::InfeasibleBound, "var exceeds sup");
  const auto s = sigma_terms(var, p);
  const double star = lp_norm(all_entries(sup.b()), pn(2.0 * p));
  const double rp = std::sqrt(static_cast<double>(p));
  const bool sym = var.symmetric() && sup.symmetric();
  Builder out(sym ? "bounded_moment_bound" : "bounded_moment_bound_rect", pn(p));
  if (sym) {
    out.term("sigma_p", s.term("sigma_p"), 2.0);
  } else {
    out.term("sigma_p1", s.term("sigma_p1"), 1.0);
    out.term("sigma_p2", s.term("sigma_p2"), 1.0);
  }
  out.term("sqrtp_sigma_star", rp * star, C);
  out.r.details["sigma_star"] = star;
  return out.finish();
}

double bounded_tail_bound(double bound_value, double t, double maxsup, double C) {
  if (!(t >= 0.0)) throw Error(ErrorCode::BadParams, "t must be >= 0");
  if (!(maxsup > 0.0) || !(C > 0.0)) throw Error(ErrorCode::BadParams, "maxsup and C must be > 0");
  (void)bound_value;
  if (std::isinf(t)) return 0.0;
  return std::clamp(std::exp(-t * t / (C * maxsup * maxsup)), 0.0, 1.0);
}

BoundednessConditions boundedness_conditions(const VarianceProfile& prof, const Matrix& mean) {
  require_symmetric(prof);
  if (static_cast<std::size_t>(mean.rows()) != prof.rows() || static_cast<std::size_t>(mean.cols()) != prof.cols())
    throw Error(ErrorCode::ShapeMismatch, "mean and profile differ in shape");
  BoundednessConditions out;
  for (double v : row_sq(prof.b())) out.cond_rowsum = std::max(out.cond_rowsum, v);
  out.cond_logmax = expected_norm_formula(prof, PNorm::infinity()).term("term_logmax");
  out.cond_opnorm = schatten_norm(mean, PNorm::infinity());
  out.bounded_at_truncation =
      std::isfinite(out.cond_rowsum) && std::isfinite(out.cond_logmax) && std::isfinite(out.cond_opnorm);
  return out;
}

Interval noncentered_combine(double meannorm, double centered) {
  if (!(meannorm >= 0.0) || !(centered >= 0.0)) throw Error(ErrorCode::BadParams, "inputs must be >= 0");
  return {std::max(meannorm, centered - meannorm), meannorm + centered};
}

}  // namespace nhrm::bounds

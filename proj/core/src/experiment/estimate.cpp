#include "nhrm/experiment/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhrm/error.hpp"

namespace nhrm::experiment {

void Accumulator::add(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteEntry, "non-finite Monte Carlo value");
  const Rational q(x);
  sum_ += q;
  sumsq_ += q * q;
  values_.push_back(x);
}

void Accumulator::merge(const Accumulator& other) {
  sum_ += other.sum_;
  sumsq_ += other.sumsq_;
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

McEstimate Accumulator::estimate(const std::string& statistic) const {
  McEstimate e;
  e.statistic = statistic;
  e.count = count();
  if (e.count == 0) return e;
  const Rational n(static_cast<unsigned long>(e.count));
  const Rational mean = sum_ / n;
  e.mean = mean.get_d();
  if (e.count > 1) {
    const Rational var = (sumsq_ - sum_ * mean) / (n - 1);
    e.stderr_ = std::sqrt(std::max(0.0, Rational(var / n).get_d()));
  }
  std::vector<double> v = values_;
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  e.q05 = q(0.05);
  e.q50 = q(0.50);
  e.q95 = q(0.95);
  return e;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double safe_ratio(double a, double b) {
  if (a == 0.0 && b == 0.0) return 1.0;
  return a / b;
}

}  // namespace nhrm::experiment

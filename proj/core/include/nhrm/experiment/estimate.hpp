#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nhrm/rational.hpp"

namespace nhrm::experiment {

struct McEstimate {
  std::string statistic;
  double mean = 0.0;
  double stderr_ = 0.0;  ///< sample standard deviation / sqrt(count)
  std::uint64_t count = 0;
  double q05 = 0.0, q50 = 0.0, q95 = 0.0;
};

/// Running sums kept as exact rationals, so merging partial accumulators in any
/// order reproduces a single pass bit for bit. Values are kept for quantiles.
class Accumulator {
 public:
  void add(double x);
  void merge(const Accumulator& other);
  std::uint64_t count() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  McEstimate estimate(const std::string& statistic) const;

 private:
  Rational sum_ = 0;
  Rational sumsq_ = 0;
  std::vector<double> values_;
};

/// Linear-interpolation quantile (R type 7) of unsorted data.
double quantile(std::vector<double> values, double q);

/// a / b with 0/0 = 1.
double safe_ratio(double a, double b);

}  // namespace nhrm::experiment

#pragma once

#include <cstddef>
#include <span>

namespace gvoys {

/// Welford accumulator for a sample mean and unbiased sample variance.
class RunningStats {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased (n - 1) variance; 0 for fewer than two samples.
  double variance() const;
  /// sqrt(variance / n); NaN for fewer than two samples.
  double standard_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace gvoys

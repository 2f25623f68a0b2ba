#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace scg {

/// Mean and standard error from running sums.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++n_;
    sum_ += x;
    sum_sq_ += x * x;
  }
  void merge(const RunningStats& other) noexcept {
    n_ += other.n_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept;
  /// Unbiased sample variance; 0 below two samples.
  double variance() const noexcept;
  double stderr_of_mean() const noexcept;

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

/// Ordinary least squares. Throws DegenerateInput below two distinct x.
FitResult linear_fit(std::span<const std::pair<double, double>> points);

}  // namespace scg

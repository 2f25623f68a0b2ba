#include "scg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scg/errors.hpp"

namespace scg {

double RunningStats::mean() const noexcept {
  return n_ ? sum_ / static_cast<double>(n_) : std::numeric_limits<double>::quiet_NaN();
}

double RunningStats::variance() const noexcept {
  if (n_ < 2) return 0.0;
  const double n = static_cast<double>(n_);
  return std::max(0.0, (sum_sq_ - sum_ * sum_ / n) / (n - 1.0));
}

double RunningStats::stderr_of_mean() const noexcept {
  return n_ ? std::sqrt(variance() / static_cast<double>(n_)) : std::numeric_limits<double>::quiet_NaN();
}

FitResult linear_fit(std::span<const std::pair<double, double>> points) {
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (points.size() < 2 || !(sxx > 0.0)) throw DegenerateInput("linear_fit needs two distinct x values");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  fit.slope_stderr = points.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return fit;
}

}  // namespace scg

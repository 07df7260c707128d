#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace remlab {

// 99% two-sided Wilson score interval. Positivity claims use lo, never p_hat.
struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson99(std::int64_t successes, std::int64_t trials);

struct KsResult {
  double distance = 0.0;
  double p_value = 1.0;  // asymptotic two-sample Kolmogorov p
};
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;  // unbiased
  std::int64_t n = 0;
};
MeanVar mean_var(std::span<const double> xs);

// OLS fit y = intercept + slope*x with the usual slope standard error.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> xs);  // by value: sorts a copy

}  // namespace remlab

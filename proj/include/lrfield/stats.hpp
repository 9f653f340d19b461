#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lrfield {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse of normal_cdf (Acklam's rational approximation with one Halley
// polish step; absolute error well below 1e-12 on (0,1)).
double normal_quantile(double p);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // unbiased, n-1
double standard_error(std::span<const double> xs);   // sd / sqrt(n)

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of y on x.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

// Empirical quantile with linear interpolation between order statistics.
double sample_quantile(std::span<const double> xs, double p);

// Bootstrap standard error of the p-quantile (nonparametric resampling).
double bootstrap_quantile_se(std::span<const double> xs, double p, int resamples,
                             std::uint64_t seed);

}  // namespace lrfield

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hawkes::stats {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
};

Summary summarize(std::span<const double> xs);
double mean(std::span<const double> xs);
double variance(std::span<const double> xs);
double correlation(std::span<const double> xs, std::span<const double> ys);

/// Linear interpolation between order statistics, q in [0, 1].
double quantile(std::vector<double> xs, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
};

/// Ordinary least squares; standard errors from the residual scatter.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Weighted least squares with known per-point standard errors of y; the
/// reported standard errors propagate those errors only.
LinearFit weighted_linear_fit(std::span<const double> xs, std::span<const double> ys,
                              std::span<const double> y_errors);

double normal_cdf(double x);

/// Anderson-Darling A^2 against a fully specified N(mu, sigma^2).
double anderson_darling(std::span<const double> xs, double mu = 0.0, double sigma = 1.0);
/// Upper 1% point of A^2 for a fully specified null.
inline constexpr double kAndersonDarlingCritical1 = 3.857;

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-square statistic for uniform counts and its upper-tail p-value.
struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace hawkes::stats

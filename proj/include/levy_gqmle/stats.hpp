#pragma once

#include <vector>

#include <Eigen/Core>

namespace levy_gqmle {

double mean(const std::vector<double>& v);
/// Unbiased (n - 1) sample variance; 0 for fewer than two values.
double sample_variance(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);
double sample_covariance(const std::vector<double>& a, const std::vector<double>& b);

/// Standard error of the mean from non-overlapping batch means. Serially
/// correlated input needs batches long compared to its correlation time.
double batch_means_se(const std::vector<double>& v, int batches = 30);

/// Linear-interpolation quantile (type 7) of unsorted data.
double quantile(std::vector<double> v, double p);

double normal_quantile(double p);

/// Fourth-order k-statistics k2, k3, k4 of a sample (unbiased cumulants).
struct SampleCumulants {
  double mean = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};
SampleCumulants sample_cumulants(const std::vector<double>& v);

/// 2x2 sample covariance of the rows (a_i, b_i).
Eigen::Matrix2d covariance_2d(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace levy_gqmle

#include "levy_gqmle/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_covariance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ParameterDomain, "covariance: size mismatch");
  if (a.size() < 2) return 0.0;
  const double ma = mean(a);
  const double mb = mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

double sample_variance(const std::vector<double>& v) { return sample_covariance(v, v); }

double sample_sd(const std::vector<double>& v) { return std::sqrt(sample_variance(v)); }

double batch_means_se(const std::vector<double>& v, int batches) {
  if (batches < 2) throw Error(ErrorKind::ParameterDomain, "need at least two batches");
  const std::size_t len = v.size() / static_cast<std::size_t>(batches);
  if (len == 0) {
    return v.size() > 1 ? sample_sd(v) / std::sqrt(static_cast<double>(v.size())) : 0.0;
  }
  std::vector<double> means(static_cast<std::size_t>(batches));
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += v[b * len + i];
    means[static_cast<std::size_t>(b)] = s / static_cast<double>(len);
  }
  return sample_sd(means) / std::sqrt(static_cast<double>(batches));
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw Error(ErrorKind::ParameterDomain, "quantile of empty sample");
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

SampleCumulants sample_cumulants(const std::vector<double>& v) {
  SampleCumulants out;
  const double n = static_cast<double>(v.size());
  if (v.size() < 4) throw Error(ErrorKind::ParameterDomain, "k-statistics need four values");
  out.mean = mean(v);
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  for (double x : v) {
    const double d = x - out.mean;
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const double m2 = s2 / n;
  const double m3 = s3 / n;
  const double m4 = s4 / n;
  out.k2 = n / (n - 1.0) * m2;
  out.k3 = n * n / ((n - 1.0) * (n - 2.0)) * m3;
  out.k4 = n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
           ((n - 1.0) * (n - 2.0) * (n - 3.0));
  return out;
}

Eigen::Matrix2d covariance_2d(const std::vector<double>& a, const std::vector<double>& b) {
  Eigen::Matrix2d c;
  c(0, 0) = sample_variance(a);
  c(1, 1) = sample_variance(b);
  c(0, 1) = c(1, 0) = sample_covariance(a, b);
  return c;
}

}  // namespace levy_gqmle

#include "levy_gqmle/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Ascending series, A&S 9.6.11 with n = 1:
// K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k!(k+1)!)
double k1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
  double psi_k1 = -kEulerGamma;      // psi(k+1)
  double psi_k2 = 1.0 - kEulerGamma; // psi(k+2)
  double i1_sum = 0.0;
  double psi_sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    i1_sum += term;
    psi_sum += (psi_k1 + psi_k2) * term;
    if (term < 1e-18 * i1_sum) break;
    term *= q / ((k + 1.0) * (k + 2.0));
    psi_k1 += 1.0 / (k + 1.0);
    psi_k2 += 1.0 / (k + 2.0);
  }
  const double i1 = 0.5 * x * i1_sum;
  return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * psi_sum;
}

// e^x K1(x) = int_0^inf exp(-x (cosh t - 1)) cosh t dt. The integrand is
// analytic in a strip and decays doubly exponentially, so the trapezoid rule
// converges geometrically; the step shrinks with the peak width ~ 1/sqrt(x).
double k1_scaled_trapezoid(double x) {
  const double step = std::min(0.125, 0.5 / std::sqrt(x));
  double sum = 0.5;
  for (int k = 1;; ++k) {
    const double t = k * step;
    const double ch = std::cosh(t);
    const double term = std::exp(-x * (ch - 1.0)) * ch;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return step * sum;
}

void check_argument(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::ParameterDomain, "bessel_k1 requires finite x > 0");
  }
}

}  // namespace

double bessel_k1_scaled(double x) {
  check_argument(x);
  if (x <= 1.0) return std::exp(x) * k1_series(x);
  return k1_scaled_trapezoid(x);
}

double bessel_k1(double x) {
  check_argument(x);
  if (x <= 1.0) return k1_series(x);
  if (x > 705.0) return 0.0;
  return k1_scaled_trapezoid(x) * std::exp(-x);
}

}  // namespace levy_gqmle

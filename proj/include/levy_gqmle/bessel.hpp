#pragma once

namespace levy_gqmle {

/// Modified Bessel function of the second kind, order one, for x > 0.
/// Ascending series for x <= 1, trapezoid on the cosh integral above;
/// relative accuracy better than 1e-12.
double bessel_k1(double x);

/// exp(x) * K1(x); finite for large x where K1 itself underflows.
double bessel_k1_scaled(double x);

}  // namespace levy_gqmle

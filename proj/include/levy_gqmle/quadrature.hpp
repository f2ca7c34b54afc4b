#pragma once

#include <functional>
#include <vector>

namespace levy_gqmle {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;    // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Bisects the interval
/// with the largest error estimate until error <= max(abs_tol, rel_tol*|I|).
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, double abs_tol, int max_intervals = 2000);

/// Integrand writing `dim` components to out[0..dim).
using VectorIntegrand = std::function<void(double, double*)>;

struct VectorQuadratureResult {
  std::vector<double> value;
  std::vector<double> error;
  int evaluations = 0;
  bool converged = false;
};

/// Same scheme for several integrands sharing the nodes; every component must
/// meet the tolerance.
VectorQuadratureResult integrate_gk15_vector(const VectorIntegrand& f, int dim, double a,
                                             double b, double rel_tol, double abs_tol,
                                             int max_intervals = 2000);

}  // namespace levy_gqmle

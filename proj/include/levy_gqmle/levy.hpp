#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "levy_gqmle/quadrature.hpp"
#include "levy_gqmle/random.hpp"

namespace levy_gqmle {

/// Normal inverse Gaussian law of Z_1; Z_t ~ NIG(alpha, beta, delta t, mu t).
struct Nig {
  double alpha;
  double beta;
  double delta;
  double mu;
};

/// Z_1 = G+ - G- with G± ~ Gamma(shape±, rate±); shapes scale with t.
struct BilateralGamma {
  double shape_plus;
  double rate_plus;
  double shape_minus;
  double rate_minus;
};

/// sigma W_t. Only used as the Gaussian comparison case.
struct Brownian {
  double sigma;
};

using LevyLawSpec = std::variant<Nig, BilateralGamma, Brownian>;

/// Throws Error(ParameterDomain) when the parameters are outside the family's domain.
void validate(const LevyLawSpec& spec);

std::string family_name(const LevyLawSpec& spec);  // "nig", "bgamma", "brownian"
bool is_pure_jump(const LevyLawSpec& spec);

/// Blumenthal-Getoor index: NIG 1, bilateral Gamma 0, Brownian 2 (no jumps).
double blumenthal_getoor_index(const LevyLawSpec& spec);

/// Cumulants kappa_1..kappa_order of Z_1.
class CumulantVector {
 public:
  explicit CumulantVector(std::vector<double> kappa) : kappa_(std::move(kappa)) {}

  /// 1-based, kappa(1) is the mean.
  double kappa(int j) const { return kappa_.at(static_cast<std::size_t>(j - 1)); }
  int order() const { return static_cast<int>(kappa_.size()); }
  const std::vector<double>& values() const { return kappa_; }

 private:
  std::vector<double> kappa_;
};

CumulantVector cumulants(const LevyLawSpec& spec, int order = 4);

/// True when E[Z_1] = 0 and Var[Z_1] = 1 within `tol`.
bool standardization_check(const LevyLawSpec& spec, double tol = 1e-12);

/// One draw of Z_{t+h} - Z_t.
double sample_increment(const LevyLawSpec& spec, double h, RandomStream& rng);

/// Inverse Gaussian draw with mean `mean` and shape `shape`
/// (Michael-Schucany-Haas transformation with one extra uniform).
double sample_inverse_gaussian(double mean, double shape, RandomStream& rng);

/// Density of the Levy measure nu_0 at z != 0.
double levy_density(const LevyLawSpec& spec, double z);

struct LevyIntegral {
  double value = 0.0;
  double error = 0.0;  // quadrature + truncation estimate
  int evaluations = 0;
};

/// int F(z) nu_0(dz) for F(z) = O(z^2) at the origin, to relative tolerance `tol`.
/// Each half-line is mapped through z = ±e^u, which turns the |z|^{-1-beta}
/// singularity into exponential decay in u; the u-range is widened until the
/// integrand at both ends is below tol times the running integral.
LevyIntegral integrate_levy_detailed(const LevyLawSpec& spec,
                                     const std::function<double(double)>& F, double tol);

double integrate_levy(const LevyLawSpec& spec, const std::function<double(double)>& F,
                      double tol);

struct LevyVectorIntegral {
  std::vector<double> value;
  std::vector<double> error;
  int evaluations = 0;
};

/// Several integrals over shared nodes; the tolerance applies to each component.
LevyVectorIntegral integrate_levy_vector(const LevyLawSpec& spec, const VectorIntegrand& F,
                                         int dim, double tol);

}  // namespace levy_gqmle

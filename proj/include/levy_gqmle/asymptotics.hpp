#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/levy.hpp"
#include "levy_gqmle/parallel.hpp"

namespace levy_gqmle {

struct InvariantBudget {
  double horizon = 1e5;  // simulated time after burn-in
  double burn_in = 20.0;
  double spacing = 1.0;  // thinning interval
  double dt = 0.01;      // Euler step
  double x0 = 0.0;
};

/// Approximate draws from pi0 taken along one long Euler path.
struct InvariantSample {
  std::vector<double> states;
  double burn_in = 0.0;
  double spacing = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
};

/// Throws MixingSuspect when the sample is too small or its variance is off
/// by more than 10% (against the OU closed form when available, otherwise
/// between the two halves of the path).
InvariantSample sample_invariant(const TrueModel& model, const LevyLawSpec& noise,
                                 const InvariantBudget& budget, std::uint64_t seed);

/// pi0-average of g over the sample together with its batch-means error.
struct SampleAverage {
  double value = 0.0;
  double se = 0.0;
};
SampleAverage invariant_average(const InvariantSample& inv, const std::function<double(double)>& g);

/// Evaluation grid at the 25 pi0-quantiles 1%, ..., 99%.
std::vector<double> quantile_grid(const InvariantSample& inv, int points = 25);

struct EpeOptions {
  double t_max = 40.0;
  long inner_paths = 2000;
  double dt = 0.01;
  double centering_gate = 3.0;  // in batch-means standard errors
  unsigned threads = default_threads();
};

/// f(x) = int_0^inf E^x[g(X_t)] dt sampled on a grid; linear in between and
/// linear beyond the ends with the outermost slopes.
struct EPEApprox {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> se;
  std::vector<double> tail_bound;
  double t_max = 0.0;
  long inner_paths = 0;
  double centering = 0.0;
  double centering_se = 0.0;

  double operator()(double x) const;
};

/// Monte Carlo solution of the extended Poisson equation with right-hand side g.
/// Inner path m draws from stream (seed, m) and drives every grid start, so the
/// grid values share their noise. Fails with NotCentered unless
/// |int g dpi0| <= gate * SE on `inv`.
EPEApprox epe_solve(const std::function<double(double)>& g, const TrueModel& model,
                    const LevyLawSpec& noise, const InvariantSample& inv,
                    const std::vector<double>& grid, std::uint64_t seed,
                    const EpeOptions& options = {});

struct MartingaleReport {
  std::vector<double> starts;
  std::vector<double> lags;
  Eigen::MatrixXd mean;      // (start, lag) increments of M
  Eigen::MatrixXd se;
  double max_ratio = 0.0;    // max |mean| / se
};

/// Checks E^x[f(X_s) - f(x) + int_0^s g(X_u) du] = 0, i.e. that
/// f(X_t) + int_0^t g(X_u) du is a martingale, on a panel of (x, s).
MartingaleReport martingale_check(const EPEApprox& f, const std::function<double(double)>& g,
                                  const TrueModel& model, const LevyLawSpec& noise,
                                  const std::vector<double>& starts,
                                  const std::vector<double>& lags, long reps, std::uint64_t seed,
                                  double dt = 0.01);

/// theta = (gamma, alpha); matrices below are indexed in that order.
struct ThetaStar {
  double gamma = 0.0;
  double alpha = 0.0;
};

/// EPE right-hand sides at theta*: scale part partial_gamma c (c^2 - C^2) / c^3
/// and drift part partial_alpha a (A - a) / c^2.
std::function<double(double)> scale_rhs(const ModelSpec& model, const TrueModel& truth,
                                        const ThetaStar& theta);
std::function<double(double)> drift_rhs(const ModelSpec& model, const TrueModel& truth,
                                        const ThetaStar& theta);

/// Lower-triangular
///   [ Gamma_gamma        0      ]
///   [ Gamma_alpha_gamma  Gamma_alpha ]
/// with Gamma_gamma = 2 int (c''c - c'^2)/c^4 (C^2 - c^2) - 4 int c'^2 C^2 / c^4,
/// Gamma_alpha_gamma = 2 int a' d_gamma(c^-2) (A - a),
/// Gamma_alpha = 2 int a''/c^2 (a - A) + 2 int a'^2 / c^2.
/// Throws SingularMatrix when the condition number exceeds 1e12.
Eigen::Matrix2d gamma_matrix(const ModelSpec& model, const TrueModel& truth,
                             const ThetaStar& theta, const InvariantSample& inv);

/// Jacobian of the staged estimating equations, J = Gamma diag(-1, 1).
Eigen::Matrix2d staged_jacobian(const Eigen::Matrix2d& gamma);

struct SigmaOptions {
  double quad_tol = 1e-5;
  long max_states = 4000;  // outer pi0 average uses an evenly thinned subsample
  unsigned threads = default_threads();
};

/// Per-state inner integrals of the score kernels; Sigma is 4 times their mean.
struct SigmaTerms {
  std::vector<double> gg;
  std::vector<double> ga;
  std::vector<double> aa;
};

/// Long-run covariance of the staged scores,
///   Sigma = 4 int int (K1, K2)^{x2} pi0(dx) nu0(dz),
///   K1 = c' C^2 z^2 / c^3 - (f1(x + C z) - f1(x)),
///   K2 = a' C z / c^2 + (f2(x + C z) - f2(x)).
/// Throws Inconsistent when an eigenvalue is below -1e-6.
Eigen::Matrix2d sigma_matrix(const ModelSpec& model, const TrueModel& truth,
                             const ThetaStar& theta, const InvariantSample& inv,
                             const EPEApprox& f1, const EPEApprox& f2, const LevyLawSpec& noise,
                             const SigmaOptions& options = {}, SigmaTerms* terms = nullptr);

/// V = G^{-1} S G^{-T}; throws SingularMatrix for singular G.
Eigen::Matrix2d avar(const Eigen::Matrix2d& gamma, const Eigen::Matrix2d& sigma);

struct AsymptoticsOptions {
  InvariantBudget budget;
  EpeOptions epe;
  SigmaOptions sigma;
  int grid_points = 25;
  int batches = 30;
};

struct AsymptoticsResult {
  ThetaStar theta;
  Eigen::Matrix2d Gamma = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d Sigma = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d Jacobian = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d V = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d Gamma_se = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d Sigma_se = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d V_se = Eigen::Matrix2d::Zero();
  EPEApprox f1;
  EPEApprox f2;
  long invariant_size = 0;
  long sigma_states = 0;
};

/// Invariant sample, both EPE solutions, Gamma, Sigma and V at theta*.
/// Standard errors are delete-one-batch jackknife over the pi0 sample
/// (the EPE Monte Carlo error is reported separately in f1/f2).
AsymptoticsResult compute_asymptotics(const ModelSpec& model, const TrueModel& truth,
                                      const LevyLawSpec& noise, const ThetaStar& theta,
                                      std::uint64_t seed, const AsymptoticsOptions& options = {});

}  // namespace levy_gqmle

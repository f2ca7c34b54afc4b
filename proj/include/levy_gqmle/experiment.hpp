#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "levy_gqmle/asymptotics.hpp"
#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/gqmle.hpp"
#include "levy_gqmle/levy.hpp"
#include "levy_gqmle/parallel.hpp"

namespace levy_gqmle {

enum class NoiseCase { I, II, III, Diffusion };

std::string to_string(NoiseCase c);         // "i", "ii", "iii", "diffusion"
NoiseCase noise_case_from_string(const std::string& name);
const std::vector<NoiseCase>& all_noise_cases();

/// (i) NIG(10, 0, 10, 0), (ii) bGamma(1, sqrt2, 1, sqrt2),
/// (iii) NIG(25/3, 20/3, 9/5, -12/5), diffusion: standard Brownian motion.
LevyLawSpec noise_for(NoiseCase c);

/// dX = -X/2 dt + dZ.
TrueModel reference_true_model();

/// Closed-form optimal values for the fitted model a = alpha (1 - x),
/// c = gamma / sqrt(1 + x^2) under the OU truth, from the stationary moments
/// m3 = k3~, m4 = k4~ + 3 with k~_j = 2 kappa_j / j.
ThetaStar optimal_values(NoiseCase c);

/// Maximizes the pi0-averaged limit criteria, scale first then drift.
ThetaStar optimal_values_numeric(const ModelSpec& model, const TrueModel& truth,
                                 const InvariantSample& inv);

struct DesignPoint {
  long n = 1000;
  double h = 0.05;
  double horizon() const { return static_cast<double>(n) * h; }
};

/// The three tabulated designs (1000, 0.05), (5000, 0.02), (10000, 0.01).
std::vector<DesignPoint> table_designs();

struct ExperimentDesign {
  NoiseCase noise_case = NoiseCase::I;
  std::vector<DesignPoint> designs = table_designs();
  long replications = 1000;
  std::uint64_t seed = 0;
  /// Euler sub-step cap; each observation interval is split into
  /// ceil(h / max_sim_step) steps. 0 simulates on the observation grid.
  double max_sim_step = 0.01;
  double x0 = 0.0;
  ModelSpec model = reference_fit_model();
  /// Centre for the sqrt(T) scaling; derived from the model when absent.
  std::optional<ThetaStar> theta_star;
  unsigned threads = default_threads();
};

void validate(const ExperimentDesign& design);
int refine_for(const ExperimentDesign& design, const DesignPoint& point);
/// The explicit override if set; the closed form for the reference fit; the
/// true parameters when the fitted families contain the truth; otherwise the
/// numeric maximizer over a default invariant sample.
ThetaStar theta_star_for(const ExperimentDesign& design);

inline constexpr std::array<double, 4> kTailRadii{1.0, 2.0, 4.0, 8.0};

struct DesignSummary {
  DesignPoint design;
  int refine = 1;
  long completed = 0;
  long failed = 0;
  double mean_alpha = 0.0;
  double sd_alpha = 0.0;
  double mean_gamma = 0.0;
  double sd_gamma = 0.0;
  /// P(|sqrt(T)(theta_hat - theta*)| > r) for r in kTailRadii (Euclidean norm).
  std::array<double, 4> tail_fraction{};
  /// Sample covariance of sqrt(T)(gamma_hat - gamma*, alpha_hat - alpha*).
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  std::vector<double> alpha_hat;
  std::vector<double> gamma_hat;
};

struct McSummary {
  NoiseCase noise_case = NoiseCase::I;
  ThetaStar theta_star;
  long replications = 0;
  std::uint64_t seed = 0;
  std::vector<DesignSummary> designs;
};

/// Replication k of design d uses stream (seed, d * 2^32 + k). Replications
/// that throw are excluded and counted; more than 1% failures is an error.
McSummary run_mc(const ExperimentDesign& design);

struct NormalityReport {
  Eigen::Matrix2d empirical = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d V = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d relative_difference = Eigen::Matrix2d::Zero();  // (emp - V) / |V|
  std::array<double, 2> coverage95{};  // share of |sqrt(T)(theta_hat_i - theta*_i)| / sqrt(V_ii) <= 1.96
  std::vector<double> probabilities;
  std::vector<double> normal_quantiles;
  std::vector<double> gamma_quantiles;  // standardized empirical quantiles
  std::vector<double> alpha_quantiles;
};

NormalityReport normality_check(const DesignSummary& summary, const ThetaStar& theta_star,
                                const Eigen::Matrix2d& V);

}  // namespace levy_gqmle

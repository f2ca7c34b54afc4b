#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/levy.hpp"

namespace levy_gqmle {

/// Equispaced observations X_0..X_n at spacing h.
struct SamplePath {
  double h = 0.0;
  Eigen::VectorXd values;

  long n() const { return static_cast<long>(values.size()) - 1; }
  double horizon() const { return h * static_cast<double>(n()); }
};

struct PathConfig {
  long n = 1000;
  double h = 0.05;
  double x0 = 0.0;
  std::uint64_t seed = 0;
  int refine = 1;  // Euler sub-steps per observation interval
};

void validate(const PathConfig& cfg);

/// |X| beyond this aborts the Euler recursion.
inline constexpr double kDivergenceThreshold = 1e12;

/// Euler-Maruyama for dX = A(X) dt + C(X-) dZ on the grid of step h/refine,
/// subsampled every `refine` steps. Uses stream (cfg.seed, stream_id).
SamplePath simulate_euler(const TrueModel& model, const LevyLawSpec& noise,
                          const PathConfig& cfg, std::uint64_t stream_id = 0);

/// Same recursion with an explicit stream; the caller owns the randomness.
SamplePath simulate_euler(const TrueModel& model, const LevyLawSpec& noise,
                          const PathConfig& cfg, RandomStream& rng);

/// CSV with header `t,x`, 17 significant digits.
void write_path(const SamplePath& path, std::ostream& sink);

/// Parses `t,x` CSV (header optional); rejects ragged rows, non-numeric
/// cells and grids whose spacing deviates by more than 1e-9 relative.
SamplePath load_path(std::istream& source);

struct MomentRatioReport {
  double p = 1.5;
  double K = 2.0;
  double h = 0.0;
  double ratio_h = 0.0;       // sup_x E|X_h - x|^p / (h (1 + |x|^K))
  double ratio_half = 0.0;    // same at h/2
  double change_factor = 0.0; // ratio_h / ratio_half
  std::vector<double> starts;
  std::vector<double> moments_h;
  std::vector<double> moments_half;
};

/// Monte Carlo check of E^{j-1}|X_s - X_{j-1}|^p <~ h (1 + |X_{j-1}|^K)
/// over a grid of starting points. Requires p in (max(1, BG index), 2).
MomentRatioReport small_time_moment_check(const TrueModel& model, const LevyLawSpec& noise,
                                          const PathConfig& cfg, double p, long reps,
                                          double K = 2.0,
                                          const std::vector<double>& starts = {-3, -2, -1, 0,
                                                                               1, 2, 3});

}  // namespace levy_gqmle

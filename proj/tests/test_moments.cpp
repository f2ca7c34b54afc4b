#include <cmath>
#include <vector>

#include "doctest.h"
#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/experiment.hpp"
#include "levy_gqmle/moments.hpp"
#include "levy_gqmle/stats.hpp"
#include "test_util.hpp"

using namespace levy_gqmle;

namespace {

ModelSpec correct_model() {
  ModelSpec m;
  m.drift.kind = DriftKind::LinearDecay;
  m.scale.kind = ScaleKind::Constant;
  return m;
}

struct MomentStats {
  double mean;
  double se;
};

// Replicated residual moments on fine grids.
MomentStats replicate(NoiseCase c, const ModelSpec& m, int r, double T, int reps,
                      std::uint64_t seed) {
  PathConfig cfg;
  cfg.h = 1e-4;
  cfg.n = static_cast<long>(T / cfg.h);
  cfg.seed = seed;
  std::vector<double> v;
  for (int k = 0; k < reps; ++k) {
    const SamplePath p = simulate_euler(reference_true_model(), noise_for(c), cfg, k);
    v.push_back(residual_moment(p, estimate_staged(p, m), m, r));
  }
  return {mean(v), sample_sd(v) / std::sqrt(double(reps))};
}

}  // namespace

TEST_CASE("residual moments recover the Levy-measure moments") {
  const ModelSpec m = correct_model();
  SUBCASE("r = 2 gives kappa2 = 1") {
    // gamma_hat normalizes the quadratic variation, so the spread is tiny and
    // the O(h) drift term h alpha^2 E[X^2] / gamma^2 dominates.
    const MomentStats s = replicate(NoiseCase::I, m, 2, 100, 6, 1);
    CHECK(std::abs(s.mean - 1.0) < 4 * s.se + 1e-3);
  }
  SUBCASE("r = 4 under noise (i) gives 0.03") {
    const MomentStats s = replicate(NoiseCase::I, m, 4, 100, 6, 2);
    CHECK(std::abs(s.mean - 0.03) < 4 * s.se);
  }
  SUBCASE("r = 3 under symmetric noise (ii) gives 0") {
    const MomentStats s = replicate(NoiseCase::II, m, 3, 100, 6, 3);
    CHECK(std::abs(s.mean) < 4 * s.se);
  }
}

TEST_CASE("drift misspecification leaves the r = 4 limit unchanged") {
  ModelSpec wrong = correct_model();
  wrong.drift.kind = DriftKind::MeanRevertLinear;
  wrong.drift.level = 1.0;
  for (double T : {50.0, 200.0}) {
    const MomentStats a = replicate(NoiseCase::I, correct_model(), 4, T, 4, 5);
    const MomentStats b = replicate(NoiseCase::I, wrong, 4, T, 4, 5);
    CHECK(std::abs(a.mean - b.mean) < 4 * std::hypot(a.se, b.se));
    CHECK(std::abs(b.mean - 0.03) < 4 * b.se);
  }
}

TEST_CASE("even orders are nonnegative and errors are reported") {
  const SamplePath p = test_util::make_path(0.1, {0.0, 0.4, -0.3, 0.1});
  const ModelSpec m = reference_fit_model();
  const EstimateResult e = estimate_staged(p, m);
  CHECK(residual_moment(p, e, m, 2) >= 0.0);
  CHECK(residual_moment(p, e, m, 4) >= 0.0);
  CHECK_THROWS_AS(residual_moment(p, e, m, 1), Error);
  EstimateResult bad = e;
  bad.alpha_hat = std::nan("");
  CHECK_THROWS_AS(residual_moment(p, bad, m, 2), Error);
  EstimateResult neg = e;
  neg.gamma_hat = -1.0;
  try {
    residual_moment(p, neg, m, 2);
    FAIL("expected a domain error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ParameterDomain);
  }
}

TEST_CASE("hand computation") {
  // Constant drift and scale: residuals are (dX - h alpha) / gamma.
  const SamplePath p = test_util::make_path(0.5, {0.0, 1.0, 0.0});
  ModelSpec m;
  m.drift.kind = DriftKind::Constant;
  m.scale.kind = ScaleKind::Constant;
  m.alpha_box = {-10.0, 10.0};
  EstimateResult e;
  e.alpha_hat = 0.0;
  e.gamma_hat = 2.0;
  CHECK(residual_moment(p, e, m, 2) == doctest::Approx((0.25 + 0.25) / 1.0));
  CHECK(residual_moment(p, e, m, 3) == doctest::Approx(0.0));
}

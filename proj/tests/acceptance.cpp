// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fd_check.hpp"
#include "levy_gqmle/asymptotics.hpp"
#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/experiment.hpp"
#include "levy_gqmle/gqmle.hpp"
#include "levy_gqmle/moments.hpp"
#include "levy_gqmle/stats.hpp"

using namespace levy_gqmle;

namespace {

constexpr std::uint64_t kSeed = 0;
int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Published means and SDs: {alpha mean, alpha sd, gamma mean, gamma sd} per design.
struct Cell {
  double ma, sa, mg, sg;
};
const std::array<std::array<Cell, 3>, 4> kTable{{
    {{{0.38, 0.12, 1.41, 0.11}, {0.37, 0.09, 1.41, 0.08}, {0.36, 0.08, 1.41, 0.07}}},
    {{{0.40, 0.16, 1.39, 0.29}, {0.39, 0.11, 1.39, 0.23}, {0.37, 0.09, 1.39, 0.22}}},
    {{{0.40, 0.15, 1.39, 0.19}, {0.38, 0.11, 1.39, 0.15}, {0.38, 0.10, 1.40, 0.15}}},
    {{{0.38, 0.13, 1.41, 0.10}, {0.36, 0.09, 1.41, 0.08}, {0.36, 0.08, 1.41, 0.07}}},
}};

void criterion1() {
  const std::array<double, 4> alpha{803.0 / 2406.0, 11.0 / 30.0, 609.0 / 1658.0, 1.0 / 3.0};
  double worst = 0.0;
  const auto& cases = all_noise_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const ThetaStar t = optimal_values(cases[i]);
    worst = std::max({worst, std::abs(t.alpha - alpha[i]), std::abs(t.gamma - std::sqrt(2.0))});
  }
  verdict(1, worst <= 1e-12, fmt("max |error| = %.3g (tol 1e-12)", worst));
}

std::vector<McSummary> criterion2() {
  std::vector<McSummary> runs;
  bool ok = true;
  int misses = 0;
  const auto& cases = all_noise_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ExperimentDesign d;
    d.noise_case = cases[i];
    d.replications = 1000;
    d.seed = kSeed;
    runs.push_back(run_mc(d));
    for (std::size_t k = 0; k < 3; ++k) {
      const DesignSummary& s = runs.back().designs[k];
      const Cell& ref = kTable[i][k];
      const double sg_tol = cases[i] == NoiseCase::II ? 0.04 : 0.02;
      const bool cell_ok = std::abs(s.mean_alpha - ref.ma) <= 0.01 &&
                           std::abs(s.sd_alpha - ref.sa) <= 0.02 &&
                           std::abs(s.mean_gamma - ref.mg) <= 0.01 &&
                           std::abs(s.sd_gamma - ref.sg) <= sg_tol;
      if (!cell_ok) {
        ok = false;
        ++misses;
      }
      std::printf("  case %-9s n=%-5ld alpha %.4f (%.4f) vs %.2f (%.2f)  gamma %.4f (%.4f) vs %.2f "
                  "(%.2f)  %s\n",
                  to_string(cases[i]).c_str(), s.design.n, s.mean_alpha, s.sd_alpha, ref.ma, ref.sa,
                  s.mean_gamma, s.sd_gamma, ref.mg, ref.sg, cell_ok ? "ok" : "MISS");
    }
  }
  verdict(2, ok,
          fmt("%g of 12 cells outside +-0.01 (means) / +-0.02 (SDs; 0.04 for case ii gamma SD)",
              misses));
  return runs;
}

void criterion3(const std::vector<McSummary>& runs) {
  bool ok = true;
  std::string detail;
  for (const McSummary& m : runs) {
    const double ratio = m.designs[2].sd_alpha / m.designs[0].sd_alpha;
    ok = ok && ratio >= 0.55 && ratio <= 0.85;
    detail += to_string(m.noise_case) + "=" + fmt("%.3f ", ratio);
  }
  verdict(3, ok, "SD(alpha) ratio n=10000/n=1000 in [0.55, 0.85]: " + detail);
}

void criterion4(const std::vector<McSummary>& runs) {
  const ThetaStar th = optimal_values(NoiseCase::I);
  const AsymptoticsResult a = compute_asymptotics(reference_fit_model(), reference_true_model(),
                                                  noise_for(NoiseCase::I), th, kSeed);
  const NormalityReport r = normality_check(runs[0].designs[2], th, a.V);
  const double dg = r.relative_difference(0, 0);
  const double da = r.relative_difference(1, 1);
  verdict(4, std::abs(dg) <= 0.2 && std::abs(da) <= 0.2,
          fmt("empirical (%.4f, %.4f) vs V (%.4f, %.4f) on the diagonal, tol 20%%",
              r.empirical(0, 0), r.empirical(1, 1), a.V(0, 0), a.V(1, 1)) +
              fmt("; relative %.3f, %.3f; V SE (%.4f, %.4f)", dg, da, a.V_se(0, 0), a.V_se(1, 1)));
}

void criterion5() {
  const std::array<NoiseCase, 3> cases{NoiseCase::I, NoiseCase::II, NoiseCase::III};
  const std::array<double, 3> g_alpha{6.015, 7.5, 829.0 / 150.0};
  bool ok = true;
  std::string detail;
  // At horizon 1e5 the pi0 average of Gamma_alpha has a relative SE near 1.5%;
  // 1e6 brings it to about 0.4%.
  InvariantBudget budget;
  budget.horizon = 1e6;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const InvariantSample inv =
        sample_invariant(reference_true_model(), noise_for(cases[i]), budget, kSeed + i);
    const Eigen::Matrix2d G =
        gamma_matrix(reference_fit_model(), reference_true_model(), optimal_values(cases[i]), inv);
    const double eg = std::abs(G(0, 0) / -2.0 - 1.0);
    const double ea = std::abs(G(1, 1) / g_alpha[i] - 1.0);
    ok = ok && eg <= 0.02 && ea <= 0.02;
    detail += to_string(cases[i]) +
              fmt(": G_gamma %.4f G_alpha %.4f (ref %.4f); ", G(0, 0), G(1, 1), g_alpha[i]);
  }
  verdict(5, ok, detail + "tol 2%");
}

void criterion6() {
  const TrueModel truth = reference_true_model();
  const LevyLawSpec noise = noise_for(NoiseCase::I);
  const InvariantSample inv = sample_invariant(truth, noise, InvariantBudget{}, kSeed);
  const std::vector<double> grid = quantile_grid(inv);
  auto g = [](double x) { return x; };
  const EPEApprox f = epe_solve(g, truth, noise, inv, grid, kSeed + 1);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(f.values[k] - 2.0 * grid[k]) / f.se[k]);
  }
  const MartingaleReport mr =
      martingale_check(f, g, truth, noise, {-1.5, 0.0, 1.5}, {0.5, 1.0, 2.0}, 2000, kSeed + 2);
  verdict(6, grid.size() == 25 && worst <= 3.0 && mr.max_ratio <= 3.0,
          fmt("max |f - 2x| / SE = %.3f over %g points (tol 3); martingale max |mean|/SE = %.3f "
              "(tol 3)",
              worst, double(grid.size()), mr.max_ratio));
}

void criterion7() {
  using test_util::fd_first;
  using test_util::fd_rel;
  using test_util::fd_second;
  std::mt19937_64 gen(kSeed + 7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst1 = 0.0;
  double worst2 = 0.0;
  const auto& cases = all_noise_cases();
  for (int inst = 0; inst < 20; ++inst) {
    PathConfig cfg;
    cfg.n = 200 + static_cast<long>(800 * unif(gen));
    cfg.h = 0.005 + 0.095 * unif(gen);
    cfg.seed = kSeed;
    const SamplePath p =
        simulate_euler(reference_true_model(), noise_for(cases[inst % 4]), cfg, 1000 + inst);
    ScaleFamily scale;
    scale.kind = unif(gen) < 0.5 ? ScaleKind::RationalSqrt : ScaleKind::Constant;
    DriftFamily drift;
    drift.kind = static_cast<DriftKind>(inst % 3);
    drift.level = 2.0 * unif(gen) - 1.0;
    const double gamma = 0.2 + 3.0 * unif(gen);
    const double alpha = 3.0 * unif(gen) - 1.0;

    const ObjectiveEval e1 = g1_eval(p, scale, gamma);
    auto v1 = [&](double x) { return g1_eval(p, scale, x).value; };
    worst1 = std::max({worst1, fd_rel(e1.gradient, fd_first(v1, gamma, 1e-2 * gamma)),
                       fd_rel(e1.hessian, fd_second(v1, gamma, 1e-2 * gamma))});

    const ObjectiveEval e2 = g2_eval(p, drift, scale, gamma, alpha);
    auto v2 = [&](double x) { return g2_eval(p, drift, scale, gamma, x).value; };
    worst2 = std::max({worst2, fd_rel(e2.gradient, fd_first(v2, alpha, 1e-2)),
                       fd_rel(e2.hessian, fd_second(v2, alpha, 1e-2))});
  }
  verdict(7, worst1 <= 1e-6 && worst2 <= 1e-6,
          fmt("max relative error G1 %.3g, G2 %.3g over 20 instances each (tol 1e-6)", worst1,
              worst2));
}

void criterion8() {
  // Correctly specified fit on a fine grid. The error bar is 4 replication
  // SEs plus an O(h) discretization allowance of 4h.
  ModelSpec m;
  m.drift.kind = DriftKind::LinearDecay;
  m.scale.kind = ScaleKind::Constant;
  const double h = 1e-4;
  const double T = 100.0;
  const int reps = 8;
  struct Target {
    NoiseCase c;
    std::array<double, 3> k;
  };
  const std::array<Target, 2> targets{{{NoiseCase::I, {1.0, 0.0, 0.03}},
                                       {NoiseCase::III, {1.0, 0.8, 89.0 / 75.0}}}};
  bool ok = true;
  std::string detail;
  for (const Target& t : targets) {
    std::array<std::vector<double>, 3> est;
    PathConfig cfg;
    cfg.n = static_cast<long>(T / h);
    cfg.h = h;
    cfg.seed = kSeed + 8;
    for (int k = 0; k < reps; ++k) {
      const SamplePath p = simulate_euler(reference_true_model(), noise_for(t.c), cfg, k);
      const EstimateResult e = estimate_staged(p, m);
      for (int r = 2; r <= 4; ++r) est[r - 2].push_back(residual_moment(p, e, m, r));
    }
    detail += to_string(t.c) + ":";
    for (int r = 0; r < 3; ++r) {
      const double mu = mean(est[r]);
      const double se = sample_sd(est[r]) / std::sqrt(double(reps));
      const double bar = 4.0 * se + 4.0 * h;
      ok = ok && std::abs(mu - t.k[r]) <= bar;
      detail += fmt(" k%g %.4f+-%.4f (ref %.4f)", r + 2.0, mu, bar, t.k[r]);
    }
    detail += "; ";
  }
  verdict(8, ok, detail);
}

void criterion9(const std::vector<McSummary>& runs) {
  bool ok = true;
  for (const McSummary& m : runs) {
    for (const DesignSummary& d : m.designs) {
      for (std::size_t r = 1; r < kTailRadii.size(); ++r) {
        ok = ok && d.tail_fraction[r] <= d.tail_fraction[r - 1];
      }
    }
  }
  const auto& tf = runs[0].designs[0].tail_fraction;
  verdict(9, ok,
          fmt("monotone over r in {1,2,4,8} for all 12 cells; e.g. case i n=1000: %.3f %.3f %.3f "
              "%.3f",
              tf[0], tf[1], tf[2], tf[3]));
}

template <class F>
void guarded(int id, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    verdict(id, false, std::string("error: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, criterion1);
  std::vector<McSummary> runs;
  guarded(2, [&] { runs = criterion2(); });
  if (runs.size() == 4) {
    guarded(3, [&] { criterion3(runs); });
    guarded(4, [&] { criterion4(runs); });
    guarded(9, [&] { criterion9(runs); });
  } else {
    for (int id : {3, 4, 9}) verdict(id, false, "Monte Carlo study unavailable");
  }
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include "levy_gqmle/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/optimize.hpp"
#include "levy_gqmle/sde.hpp"
#include "levy_gqmle/stats.hpp"

namespace levy_gqmle {

std::string to_string(NoiseCase c) {
  switch (c) {
    case NoiseCase::I: return "i";
    case NoiseCase::II: return "ii";
    case NoiseCase::III: return "iii";
    case NoiseCase::Diffusion: return "diffusion";
  }
  return "unknown";
}

NoiseCase noise_case_from_string(const std::string& name) {
  if (name == "i" || name == "1") return NoiseCase::I;
  if (name == "ii" || name == "2") return NoiseCase::II;
  if (name == "iii" || name == "3") return NoiseCase::III;
  if (name == "diffusion" || name == "diff") return NoiseCase::Diffusion;
  throw Error(ErrorKind::Usage, "unknown noise case '" + name + "' (use i, ii, iii, diffusion)");
}

const std::vector<NoiseCase>& all_noise_cases() {
  static const std::vector<NoiseCase> cases{NoiseCase::I, NoiseCase::II, NoiseCase::III,
                                            NoiseCase::Diffusion};
  return cases;
}

LevyLawSpec noise_for(NoiseCase c) {
  switch (c) {
    case NoiseCase::I: return Nig{10.0, 0.0, 10.0, 0.0};
    case NoiseCase::II: return BilateralGamma{1.0, std::sqrt(2.0), 1.0, std::sqrt(2.0)};
    case NoiseCase::III: return Nig{25.0 / 3.0, 20.0 / 3.0, 9.0 / 5.0, -12.0 / 5.0};
    case NoiseCase::Diffusion: return Brownian{1.0};
  }
  return Brownian{1.0};
}

TrueModel reference_true_model() {
  TrueModel t;
  t.drift.kind = DriftKind::LinearDecay;
  t.alpha = 0.5;
  t.scale.kind = ScaleKind::Constant;
  t.gamma = 1.0;
  return t;
}

ThetaStar optimal_values(NoiseCase c) {
  const CumulantVector k = cumulants(noise_for(c), 4);
  // Stationary cumulants of the OU solution with reversion rate 1/2.
  double kt[5];
  for (int j = 1; j <= 4; ++j) kt[j] = 2.0 * k.kappa(j) / j;
  const double m1 = kt[1];
  const double m2 = kt[2] + m1 * m1;
  const double m3 = kt[3] + 3.0 * kt[2] * m1 + m1 * m1 * m1;
  const double m4 = kt[4] + 4.0 * kt[3] * m1 + 3.0 * kt[2] * kt[2] + 6.0 * kt[2] * m1 * m1 +
                    m1 * m1 * m1 * m1;
  ThetaStar t;
  t.alpha = (m2 - m1 - m3 + m4) / (2.0 * (1.0 - 2.0 * m1 + 2.0 * m2 - 2.0 * m3 + m4));
  t.gamma = std::sqrt(1.0 + m2);
  return t;
}

ThetaStar optimal_values_numeric(const ModelSpec& model, const TrueModel& truth,
                                 const InvariantSample& inv) {
  validate(model);
  const auto& xs = inv.states;
  if (xs.empty()) throw Error(ErrorKind::ParameterDomain, "empty invariant sample");
  const double N = static_cast<double>(xs.size());

  auto g1 = [&](double gamma) {
    ObjectiveEval e;
    for (double x : xs) {
      const double c = model.scale.value(x, gamma);
      const double c1 = model.scale.d_param(x, gamma);
      const double c2 = model.scale.d2_param(x, gamma);
      const double C2 = truth.C(x) * truth.C(x);
      const double cc = c * c;
      e.value -= std::log(cc) + C2 / cc;
      e.gradient -= 2.0 * c1 / c - 2.0 * C2 * c1 / (cc * c);
      e.hessian -= 2.0 * (c2 * c - c1 * c1) / cc - 2.0 * C2 * (c2 * c - 3.0 * c1 * c1) / (cc * cc);
    }
    e.value /= N;
    e.gradient /= N;
    e.hessian /= N;
    return e;
  };
  const MaximizeResult s = maximize_scalar(g1, model.gamma_box);
  if (!s.converged) throw Error(ErrorKind::EstimationFailure, "numeric gamma* did not converge");

  auto g2 = [&](double alpha) {
    ObjectiveEval e;
    for (double x : xs) {
      const double c = model.scale.value(x, s.argmax);
      const double w = 1.0 / (c * c);
      const double r = truth.A(x) - model.drift.value(x, alpha);
      const double a1 = model.drift.d_param(x, alpha);
      const double a2 = model.drift.d2_param(x, alpha);
      e.value -= r * r * w;
      e.gradient += 2.0 * r * a1 * w;
      e.hessian += 2.0 * (r * a2 - a1 * a1) * w;
    }
    e.value /= N;
    e.gradient /= N;
    e.hessian /= N;
    return e;
  };
  MaximizeOptions mo;
  mo.log_grid = false;
  const MaximizeResult d = maximize_scalar(g2, model.alpha_box, mo);
  if (!d.converged) throw Error(ErrorKind::EstimationFailure, "numeric alpha* did not converge");
  return {s.argmax, d.argmax};
}

std::vector<DesignPoint> table_designs() { return {{1000, 0.05}, {5000, 0.02}, {10000, 0.01}}; }

void validate(const ExperimentDesign& design) {
  if (design.replications < 2) {
    throw Error(ErrorKind::ParameterDomain, "need at least two replications");
  }
  if (design.designs.empty()) throw Error(ErrorKind::ParameterDomain, "no designs given");
  for (const auto& d : design.designs) {
    if (d.n < 2 || !(d.h > 0.0)) throw Error(ErrorKind::ParameterDomain, "design needs n>=2, h>0");
  }
  if (!(design.max_sim_step >= 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "max_sim_step must be >= 0");
  }
  validate(design.model);
}

int refine_for(const ExperimentDesign& design, const DesignPoint& point) {
  if (design.max_sim_step <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(point.h / design.max_sim_step - 1e-9)));
}

ThetaStar theta_star_for(const ExperimentDesign& design) {
  if (design.theta_star) return *design.theta_star;
  const ModelSpec& m = design.model;
  const TrueModel truth = reference_true_model();
  if (m.drift.kind == DriftKind::MeanRevertLinear && m.drift.level == 1.0 &&
      m.scale.kind == ScaleKind::RationalSqrt) {
    return optimal_values(design.noise_case);
  }
  if (m.drift.kind == truth.drift.kind && m.scale.kind == truth.scale.kind) {
    return {truth.gamma, truth.alpha};
  }
  const InvariantSample inv =
      sample_invariant(truth, noise_for(design.noise_case), InvariantBudget{}, design.seed);
  return optimal_values_numeric(m, truth, inv);
}

McSummary run_mc(const ExperimentDesign& design) {
  validate(design);
  McSummary out;
  out.noise_case = design.noise_case;
  out.theta_star = theta_star_for(design);
  out.replications = design.replications;
  out.seed = design.seed;
  const LevyLawSpec noise = noise_for(design.noise_case);
  const TrueModel truth = reference_true_model();
  const long R = design.replications;

  for (std::size_t d = 0; d < design.designs.size(); ++d) {
    const DesignPoint& point = design.designs[d];
    PathConfig cfg;
    cfg.n = point.n;
    cfg.h = point.h;
    cfg.x0 = design.x0;
    cfg.seed = design.seed;
    cfg.refine = refine_for(design, point);

    std::vector<double> alpha(static_cast<std::size_t>(R));
    std::vector<double> gamma(static_cast<std::size_t>(R));
    std::vector<char> ok(static_cast<std::size_t>(R), 0);
    parallel_for(R, design.threads, [&](long k) {
      const auto idx = static_cast<std::size_t>(k);
      try {
        const std::uint64_t stream = (static_cast<std::uint64_t>(d) << 32) +
                                     static_cast<std::uint64_t>(k);
        const SamplePath path = simulate_euler(truth, noise, cfg, stream);
        const EstimateResult est = estimate_staged(path, design.model);
        if (std::isfinite(est.alpha_hat) && std::isfinite(est.gamma_hat) &&
            !est.scale.degenerate && !est.drift.degenerate) {
          alpha[idx] = est.alpha_hat;
          gamma[idx] = est.gamma_hat;
          ok[idx] = 1;
        }
      } catch (const Error&) {
        ok[idx] = 0;
      }
    });

    DesignSummary s;
    s.design = point;
    s.refine = cfg.refine;
    for (long k = 0; k < R; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      if (!ok[idx]) {
        ++s.failed;
        continue;
      }
      s.alpha_hat.push_back(alpha[idx]);
      s.gamma_hat.push_back(gamma[idx]);
    }
    s.completed = static_cast<long>(s.alpha_hat.size());
    if (static_cast<double>(s.failed) > 0.01 * static_cast<double>(R)) {
      std::ostringstream msg;
      msg << s.failed << " of " << R << " replications failed at n=" << point.n;
      throw Error(ErrorKind::Experiment, msg.str());
    }
    s.mean_alpha = mean(s.alpha_hat);
    s.sd_alpha = sample_sd(s.alpha_hat);
    s.mean_gamma = mean(s.gamma_hat);
    s.sd_gamma = sample_sd(s.gamma_hat);

    const double root_t = std::sqrt(point.horizon());
    std::vector<double> zg;
    std::vector<double> za;
    for (std::size_t i = 0; i < s.alpha_hat.size(); ++i) {
      zg.push_back(root_t * (s.gamma_hat[i] - out.theta_star.gamma));
      za.push_back(root_t * (s.alpha_hat[i] - out.theta_star.alpha));
    }
    for (std::size_t r = 0; r < kTailRadii.size(); ++r) {
      long beyond = 0;
      for (std::size_t i = 0; i < zg.size(); ++i) {
        if (std::hypot(zg[i], za[i]) > kTailRadii[r]) ++beyond;
      }
      s.tail_fraction[r] = zg.empty() ? 0.0 : static_cast<double>(beyond) / zg.size();
    }
    s.covariance = covariance_2d(zg, za);
    out.designs.push_back(std::move(s));
  }
  return out;
}

NormalityReport normality_check(const DesignSummary& summary, const ThetaStar& theta_star,
                                const Eigen::Matrix2d& V) {
  NormalityReport rep;
  rep.empirical = summary.covariance;
  rep.V = V;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      rep.relative_difference(i, j) = (summary.covariance(i, j) - V(i, j)) / std::abs(V(i, j));
    }
  }
  const double root_t = std::sqrt(summary.design.horizon());
  std::vector<double> zg;
  std::vector<double> za;
  for (std::size_t i = 0; i < summary.gamma_hat.size(); ++i) {
    zg.push_back(root_t * (summary.gamma_hat[i] - theta_star.gamma) / std::sqrt(V(0, 0)));
    za.push_back(root_t * (summary.alpha_hat[i] - theta_star.alpha) / std::sqrt(V(1, 1)));
  }
  auto coverage = [](const std::vector<double>& z) {
    if (z.empty()) return 0.0;
    long inside = 0;
    for (double v : z) inside += std::abs(v) <= 1.959963984540054 ? 1 : 0;
    return static_cast<double>(inside) / z.size();
  };
  rep.coverage95 = {coverage(zg), coverage(za)};
  rep.probabilities = {0.025, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.975};
  for (double p : rep.probabilities) {
    rep.normal_quantiles.push_back(normal_quantile(p));
    if (!zg.empty()) {
      rep.gamma_quantiles.push_back(quantile(zg, p));
      rep.alpha_quantiles.push_back(quantile(za, p));
    }
  }
  return rep;
}

}  // namespace levy_gqmle

#include "levy_gqmle/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/random.hpp"
#include "levy_gqmle/sde.hpp"
#include "levy_gqmle/stats.hpp"

namespace levy_gqmle {

namespace {

long step_count(double span, double dt) {
  return std::max(1L, static_cast<long>(std::llround(span / dt)));
}

void check_state(double x, long step) {
  if (!std::isfinite(x) || std::abs(x) > kDivergenceThreshold) {
    std::ostringstream msg;
    msg << "Euler scheme diverged at sub-step " << step << ", state " << x;
    throw DivergenceError(msg.str(), step);
  }
}

double condition_number(const Eigen::Matrix2d& m) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  const auto& s = svd.singularValues();
  if (s(1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(1);
}

std::vector<double> batch_means(const std::vector<double>& v, int batches) {
  const std::size_t len = v.size() / static_cast<std::size_t>(batches);
  std::vector<double> out(static_cast<std::size_t>(batches), 0.0);
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += v[b * len + i];
    out[static_cast<std::size_t>(b)] = s / static_cast<double>(len);
  }
  return out;
}

// Mean of batch means with batch `skip` left out (skip < 0 keeps all).
double leave_out_mean(const std::vector<double>& means, int skip) {
  double s = 0.0;
  int count = 0;
  for (int b = 0; b < static_cast<int>(means.size()); ++b) {
    if (b == skip) continue;
    s += means[static_cast<std::size_t>(b)];
    ++count;
  }
  return s / count;
}

struct GammaTerms {
  std::vector<double> gg;
  std::vector<double> ag;
  std::vector<double> aa;
};

GammaTerms gamma_terms(const ModelSpec& model, const TrueModel& truth, const ThetaStar& theta,
                       const std::vector<double>& states) {
  GammaTerms t;
  t.gg.reserve(states.size());
  t.ag.reserve(states.size());
  t.aa.reserve(states.size());
  for (double x : states) {
    const double c = model.scale.value(x, theta.gamma);
    const double c1 = model.scale.d_param(x, theta.gamma);
    const double c2 = model.scale.d2_param(x, theta.gamma);
    const double C = truth.C(x);
    const double A = truth.A(x);
    const double a = model.drift.value(x, theta.alpha);
    const double a1 = model.drift.d_param(x, theta.alpha);
    const double a2 = model.drift.d2_param(x, theta.alpha);
    const double c4 = c * c * c * c;
    t.gg.push_back(2.0 * (c2 * c - c1 * c1) / c4 * (C * C - c * c) - 4.0 * c1 * c1 * C * C / c4);
    t.ag.push_back(2.0 * a1 * (-2.0 * c1 / (c * c * c)) * (A - a));
    t.aa.push_back(2.0 * a2 / (c * c) * (a - A) + 2.0 * a1 * a1 / (c * c));
  }
  return t;
}

Eigen::Matrix2d assemble_gamma(double gg, double ag, double aa) {
  Eigen::Matrix2d g;
  g << gg, 0.0, ag, aa;
  return g;
}

Eigen::Matrix2d assemble_sigma(double gg, double ga, double aa) {
  Eigen::Matrix2d s;
  s << 4.0 * gg, 4.0 * ga, 4.0 * ga, 4.0 * aa;
  return s;
}

}  // namespace

InvariantSample sample_invariant(const TrueModel& model, const LevyLawSpec& noise,
                                 const InvariantBudget& budget, std::uint64_t seed) {
  validate(model);
  validate(noise);
  if (!(budget.dt > 0.0) || !(budget.spacing >= budget.dt) || !(budget.horizon > 0.0) ||
      !(budget.burn_in >= 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "invalid invariant-sample budget");
  }
  RandomStream rng = make_stream(seed, 0);
  const double dt = budget.dt;
  const long burn_steps = static_cast<long>(std::llround(budget.burn_in / dt));
  const long thin = step_count(budget.spacing, dt);
  const long count = static_cast<long>(budget.horizon / budget.spacing);

  InvariantSample inv;
  inv.burn_in = budget.burn_in;
  inv.spacing = static_cast<double>(thin) * dt;
  inv.dt = dt;
  inv.seed = seed;
  inv.states.reserve(static_cast<std::size_t>(count));

  double x = budget.x0;
  long step = 0;
  auto advance = [&] {
    x += model.A(x) * dt + model.C(x) * sample_increment(noise, dt, rng);
    check_state(x, step++);
  };
  for (long k = 0; k < burn_steps; ++k) advance();
  for (long i = 0; i < count; ++i) {
    for (long k = 0; k < thin; ++k) advance();
    inv.states.push_back(x);
  }

  if (inv.states.size() < 1000) {
    throw Error(ErrorKind::MixingSuspect, "invariant sample needs at least 1000 states");
  }
  const double var = sample_variance(inv.states);
  if (model.is_linear_ou()) {
    const double expected = model.gamma * model.gamma * cumulants(noise, 2).kappa(2) /
                            (2.0 * model.reversion_rate());
    if (std::abs(var / expected - 1.0) > 0.1) {
      std::ostringstream msg;
      msg << "stationary variance " << var << " differs from " << expected << " by more than 10%";
      throw Error(ErrorKind::MixingSuspect, msg.str());
    }
  } else {
    const auto half = inv.states.begin() + static_cast<long>(inv.states.size() / 2);
    const double v1 = sample_variance(std::vector<double>(inv.states.begin(), half));
    const double v2 = sample_variance(std::vector<double>(half, inv.states.end()));
    if (std::abs(v1 / v2 - 1.0) > 0.1) {
      throw Error(ErrorKind::MixingSuspect, "half-path variances differ by more than 10%");
    }
  }
  return inv;
}

SampleAverage invariant_average(const InvariantSample& inv,
                                const std::function<double(double)>& g) {
  std::vector<double> v;
  v.reserve(inv.states.size());
  for (double x : inv.states) v.push_back(g(x));
  return {mean(v), batch_means_se(v)};
}

std::vector<double> quantile_grid(const InvariantSample& inv, int points) {
  if (points < 2) throw Error(ErrorKind::ParameterDomain, "grid needs at least two points");
  std::vector<double> sorted = inv.states;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    const double p = 0.01 + 0.98 * static_cast<double>(i) / (points - 1);
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    grid.push_back(sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
  }
  return grid;
}

double EPEApprox::operator()(double x) const {
  const std::size_t k = grid.size();
  if (k == 0) return 0.0;
  if (k == 1) return values[0];
  std::size_t i;
  if (x <= grid.front()) {
    i = 0;
  } else if (x >= grid.back()) {
    i = k - 2;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), x) - grid.begin()) - 1;
  }
  const double slope = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
  return values[i] + slope * (x - grid[i]);
}

EPEApprox epe_solve(const std::function<double(double)>& g, const TrueModel& model,
                    const LevyLawSpec& noise, const InvariantSample& inv,
                    const std::vector<double>& grid, std::uint64_t seed,
                    const EpeOptions& options) {
  validate(model);
  validate(noise);
  if (grid.empty()) throw Error(ErrorKind::ParameterDomain, "EPE grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw Error(ErrorKind::ParameterDomain, "EPE grid must be strictly increasing");
  }
  if (options.inner_paths < 2 || !(options.t_max > 0.0) || !(options.dt > 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "invalid EPE options");
  }

  EPEApprox out;
  out.grid = grid;
  out.t_max = options.t_max;
  out.inner_paths = options.inner_paths;
  const SampleAverage centre = invariant_average(inv, g);
  out.centering = centre.value;
  out.centering_se = centre.se;
  if (std::abs(centre.value) > options.centering_gate * centre.se) {
    std::ostringstream msg;
    msg << "EPE right-hand side not centred: mean " << centre.value << ", SE " << centre.se;
    throw Error(ErrorKind::NotCentered, msg.str());
  }

  const std::size_t K = grid.size();
  const long M = options.inner_paths;
  const double dt = options.dt;
  const long steps = step_count(options.t_max, dt);
  const long half = steps / 2;
  // Per-path results: full integral, late-window integral, g at T_max.
  Eigen::MatrixXd full(K, M);
  Eigen::MatrixXd late(K, M);
  Eigen::MatrixXd end(K, M);

  parallel_for(M, options.threads, [&](long m) {
    RandomStream rng = make_stream(seed, static_cast<std::uint64_t>(m));
    std::vector<double> x(grid);
    std::vector<double> gv(K);
    std::vector<double> acc(K);
    std::vector<double> acc_late(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      gv[k] = g(x[k]);
      acc[k] = 0.5 * gv[k];
    }
    for (long s = 1; s <= steps; ++s) {
      const double dz = sample_increment(noise, dt, rng);
      const double w = s == steps ? 0.5 : 1.0;
      for (std::size_t k = 0; k < K; ++k) {
        const double prev = gv[k];
        x[k] += model.A(x[k]) * dt + model.C(x[k]) * dz;
        check_state(x[k], s);
        gv[k] = g(x[k]);
        acc[k] += w * gv[k];
        if (s > half) acc_late[k] += 0.5 * (prev + gv[k]);
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      full(k, m) = acc[k] * dt;
      late(k, m) = acc_late[k] * dt;
      end(k, m) = gv[k];
    }
  });

  const double rate = model.reversion_rate();
  const double tau = rate > 0.0 ? 1.0 / rate : options.t_max;
  const double root_m = std::sqrt(static_cast<double>(M));
  for (std::size_t k = 0; k < K; ++k) {
    const Eigen::VectorXd f = full.row(k).transpose();
    const Eigen::VectorXd l = late.row(k).transpose();
    const Eigen::VectorXd e = end.row(k).transpose();
    const double fm = f.mean();
    const double lm = l.mean();
    const double fsd = std::sqrt((f.array() - fm).square().sum() / (M - 1));
    const double lsd = std::sqrt((l.array() - lm).square().sum() / (M - 1));
    out.values.push_back(fm);
    out.se.push_back(fsd / root_m);
    out.tail_bound.push_back(tau * std::abs(e.mean()) + 3.0 * std::sqrt(2.0) * lsd / root_m);
  }
  return out;
}

MartingaleReport martingale_check(const EPEApprox& f, const std::function<double(double)>& g,
                                  const TrueModel& model, const LevyLawSpec& noise,
                                  const std::vector<double>& starts,
                                  const std::vector<double>& lags, long reps, std::uint64_t seed,
                                  double dt) {
  validate(model);
  validate(noise);
  if (reps < 2 || starts.empty() || lags.empty() || !(dt > 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "invalid martingale check panel");
  }
  std::vector<long> lag_steps;
  for (double s : lags) lag_steps.push_back(step_count(s, dt));
  const long max_steps = *std::max_element(lag_steps.begin(), lag_steps.end());
  const long S = static_cast<long>(starts.size());
  const long L = static_cast<long>(lags.size());

  // values[(i * L + l) * reps + r]
  std::vector<double> values(static_cast<std::size_t>(S * L * reps));
  parallel_for(S * reps, default_threads(), [&](long job) {
    const long i = job / reps;
    const long r = job % reps;
    RandomStream rng = make_stream(seed, static_cast<std::uint64_t>(job));
    const double x0 = starts[static_cast<std::size_t>(i)];
    const double f0 = f(x0);
    double x = x0;
    double gx = g(x);
    double integral = 0.0;
    for (long s = 1; s <= max_steps; ++s) {
      x += model.A(x) * dt + model.C(x) * sample_increment(noise, dt, rng);
      check_state(x, s);
      const double gn = g(x);
      integral += 0.5 * (gx + gn) * dt;
      gx = gn;
      for (long l = 0; l < L; ++l) {
        if (lag_steps[static_cast<std::size_t>(l)] == s) {
          values[static_cast<std::size_t>((i * L + l) * reps + r)] = f(x) - f0 + integral;
        }
      }
    }
  });

  MartingaleReport report;
  report.starts = starts;
  report.lags = lags;
  report.mean = Eigen::MatrixXd::Zero(S, L);
  report.se = Eigen::MatrixXd::Zero(S, L);
  for (long i = 0; i < S; ++i) {
    for (long l = 0; l < L; ++l) {
      const auto first = values.begin() + (i * L + l) * reps;
      const std::vector<double> cell(first, first + reps);
      const double m = mean(cell);
      const double se = sample_sd(cell) / std::sqrt(static_cast<double>(reps));
      report.mean(i, l) = m;
      report.se(i, l) = se;
      const double ratio = m == 0.0 ? 0.0 : std::abs(m) / se;
      report.max_ratio = std::max(report.max_ratio, ratio);
    }
  }
  return report;
}

std::function<double(double)> scale_rhs(const ModelSpec& model, const TrueModel& truth,
                                        const ThetaStar& theta) {
  return [model, truth, theta](double x) {
    const double c = model.scale.value(x, theta.gamma);
    const double C = truth.C(x);
    return model.scale.d_param(x, theta.gamma) * (c * c - C * C) / (c * c * c);
  };
}

std::function<double(double)> drift_rhs(const ModelSpec& model, const TrueModel& truth,
                                        const ThetaStar& theta) {
  return [model, truth, theta](double x) {
    const double c = model.scale.value(x, theta.gamma);
    return model.drift.d_param(x, theta.alpha) * (truth.A(x) - model.drift.value(x, theta.alpha)) /
           (c * c);
  };
}

Eigen::Matrix2d gamma_matrix(const ModelSpec& model, const TrueModel& truth,
                             const ThetaStar& theta, const InvariantSample& inv) {
  if (!model.gamma_box.contains(theta.gamma) || !model.alpha_box.contains(theta.alpha)) {
    throw Error(ErrorKind::ParameterDomain, "theta* must lie inside the parameter boxes");
  }
  const GammaTerms t = gamma_terms(model, truth, theta, inv.states);
  const Eigen::Matrix2d g = assemble_gamma(mean(t.gg), mean(t.ag), mean(t.aa));
  if (condition_number(g) > 1e12) {
    throw Error(ErrorKind::SingularMatrix, "Gamma is singular (condition number > 1e12)");
  }
  return g;
}

Eigen::Matrix2d staged_jacobian(const Eigen::Matrix2d& gamma) {
  Eigen::Matrix2d j = gamma;
  j.col(0) *= -1.0;
  return j;
}

Eigen::Matrix2d sigma_matrix(const ModelSpec& model, const TrueModel& truth,
                             const ThetaStar& theta, const InvariantSample& inv,
                             const EPEApprox& f1, const EPEApprox& f2, const LevyLawSpec& noise,
                             const SigmaOptions& options, SigmaTerms* terms) {
  if (!is_pure_jump(noise)) {
    throw Error(ErrorKind::NoJumpPart, "Sigma needs a pure-jump driving noise");
  }
  const long N = static_cast<long>(inv.states.size());
  const long stride = std::max(1L, (N + options.max_states - 1) / options.max_states);
  std::vector<double> states;
  for (long i = 0; i < N; i += stride) states.push_back(inv.states[static_cast<std::size_t>(i)]);
  const long S = static_cast<long>(states.size());

  SigmaTerms local;
  local.gg.resize(static_cast<std::size_t>(S));
  local.ga.resize(static_cast<std::size_t>(S));
  local.aa.resize(static_cast<std::size_t>(S));
  parallel_for(S, options.threads, [&](long i) {
    const double x = states[static_cast<std::size_t>(i)];
    const double c = model.scale.value(x, theta.gamma);
    const double c1 = model.scale.d_param(x, theta.gamma);
    const double a1 = model.drift.d_param(x, theta.alpha);
    const double C = truth.C(x);
    const double f1x = f1(x);
    const double f2x = f2(x);
    auto k1 = [&](double z) { return c1 * C * C * z * z / (c * c * c) - (f1(x + C * z) - f1x); };
    auto k2 = [&](double z) { return a1 * C * z / (c * c) + (f2(x + C * z) - f2x); };
    const auto idx = static_cast<std::size_t>(i);
    const VectorIntegrand kernel = [&](double z, double* out) {
      const double u = k1(z);
      const double v = k2(z);
      out[0] = u * u;
      out[1] = u * v;
      out[2] = v * v;
    };
    const LevyVectorIntegral q = integrate_levy_vector(noise, kernel, 3, options.quad_tol);
    local.gg[idx] = q.value[0];
    local.ga[idx] = q.value[1];
    local.aa[idx] = q.value[2];
  });
  const Eigen::Matrix2d sigma = assemble_sigma(mean(local.gg), mean(local.ga), mean(local.aa));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(sigma);
  if (eig.eigenvalues().minCoeff() < -1e-6) {
    throw Error(ErrorKind::Inconsistent, "Sigma has a negative eigenvalue");
  }
  if (terms) *terms = std::move(local);
  return sigma;
}

Eigen::Matrix2d avar(const Eigen::Matrix2d& gamma, const Eigen::Matrix2d& sigma) {
  if (condition_number(gamma) > 1e12) {
    throw Error(ErrorKind::SingularMatrix, "Gamma is singular (condition number > 1e12)");
  }
  const Eigen::Matrix2d inv = gamma.inverse();
  Eigen::Matrix2d v = inv * sigma * inv.transpose();
  return 0.5 * (v + v.transpose());
}

AsymptoticsResult compute_asymptotics(const ModelSpec& model, const TrueModel& truth,
                                      const LevyLawSpec& noise, const ThetaStar& theta,
                                      std::uint64_t seed, const AsymptoticsOptions& options) {
  if (!is_pure_jump(noise)) {
    throw Error(ErrorKind::NoJumpPart, "Sigma needs a pure-jump driving noise");
  }
  AsymptoticsResult r;
  r.theta = theta;
  const InvariantSample inv = sample_invariant(truth, noise, options.budget, seed);
  r.invariant_size = static_cast<long>(inv.states.size());
  const std::vector<double> grid = quantile_grid(inv, options.grid_points);
  r.f1 = epe_solve(scale_rhs(model, truth, theta), truth, noise, inv, grid, seed + 1, options.epe);
  r.f2 = epe_solve(drift_rhs(model, truth, theta), truth, noise, inv, grid, seed + 2, options.epe);

  r.Gamma = gamma_matrix(model, truth, theta, inv);
  SigmaTerms terms;
  r.Sigma = sigma_matrix(model, truth, theta, inv, r.f1, r.f2, noise, options.sigma, &terms);
  r.sigma_states = static_cast<long>(terms.gg.size());
  r.Jacobian = staged_jacobian(r.Gamma);
  r.V = avar(r.Jacobian, r.Sigma);

  // Delete-one-batch jackknife over the pi0 sample.
  const int B = options.batches;
  const GammaTerms gt = gamma_terms(model, truth, theta, inv.states);
  const auto bgg = batch_means(gt.gg, B);
  const auto bag = batch_means(gt.ag, B);
  const auto baa = batch_means(gt.aa, B);
  const auto sgg = batch_means(terms.gg, B);
  const auto sga = batch_means(terms.ga, B);
  const auto saa = batch_means(terms.aa, B);
  std::vector<Eigen::Matrix2d> gs;
  std::vector<Eigen::Matrix2d> ss;
  std::vector<Eigen::Matrix2d> vs;
  for (int b = 0; b < B; ++b) {
    gs.push_back(assemble_gamma(leave_out_mean(bgg, b), leave_out_mean(bag, b),
                                leave_out_mean(baa, b)));
    ss.push_back(assemble_sigma(leave_out_mean(sgg, b), leave_out_mean(sga, b),
                                leave_out_mean(saa, b)));
    vs.push_back(avar(staged_jacobian(gs.back()), ss.back()));
  }
  auto jackknife = [B](const std::vector<Eigen::Matrix2d>& reps) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    for (const auto& x : reps) m += x;
    m /= B;
    Eigen::Matrix2d v = Eigen::Matrix2d::Zero();
    for (const auto& x : reps) v += (x - m).cwiseAbs2();
    return Eigen::Matrix2d((v * (B - 1.0) / B).cwiseSqrt());
  };
  r.Gamma_se = jackknife(gs);
  r.Sigma_se = jackknife(ss);
  r.V_se = jackknife(vs);
  return r;
}

}  // namespace levy_gqmle

#include "levy_gqmle/gqmle.hpp"

#include <cmath>
#include <string>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

namespace {

void require_path(const SamplePath& path) {
  if (path.values.size() < 2 || !(path.h > 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "path needs at least two observations and h > 0");
  }
}

double checked_scale(const ScaleFamily& scale, double x, double gamma) {
  const double c = scale.value(x, gamma);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::ParameterDomain, "scale coefficient is not positive");
  }
  return c;
}

StageResult degenerate_stage(double edge) {
  StageResult r;
  r.estimate = edge;
  r.degenerate = true;
  r.on_boundary = true;
  r.converged = false;
  r.method = EstimationMethod::ClosedForm;
  return r;
}

StageResult from_maximizer(const MaximizeResult& m) {
  StageResult r;
  r.estimate = m.argmax;
  r.objective = m.value;
  r.gradient = m.gradient;
  r.iterations = m.iterations;
  r.converged = m.converged;
  r.on_boundary = m.on_boundary;
  r.method = m.method == MaximizeMethod::Newton ? EstimationMethod::Newton
                                                : EstimationMethod::GridFallback;
  return r;
}

}  // namespace

ObjectiveEval g1_eval(const SamplePath& path, const ScaleFamily& scale, double gamma) {
  require_path(path);
  const double h = path.h;
  const long n = path.n();
  double value = 0.0;
  double grad = 0.0;
  double hess = 0.0;
  for (long j = 1; j <= n; ++j) {
    const double x = path.values[j - 1];
    const double dx = path.values[j] - x;
    const double dx2 = dx * dx;
    const double c = checked_scale(scale, x, gamma);
    const double c1 = scale.d_param(x, gamma);
    const double c2 = scale.d2_param(x, gamma);
    const double cc = c * c;
    value += h * std::log(cc) + dx2 / cc;
    grad += (c1 / c) * h - (c1 / (cc * c)) * dx2;
    hess += ((c2 * c - c1 * c1) / cc) * h - ((c2 * c - 3.0 * c1 * c1) / (cc * cc)) * dx2;
  }
  const double T = path.horizon();
  return {-value / T, -2.0 * grad / T, -2.0 * hess / T};
}

ObjectiveEval g2_eval(const SamplePath& path, const DriftFamily& drift, const ScaleFamily& scale,
                      double gamma_hat, double alpha) {
  require_path(path);
  const double h = path.h;
  const long n = path.n();
  double value = 0.0;
  double grad = 0.0;
  double hess = 0.0;
  for (long j = 1; j <= n; ++j) {
    const double x = path.values[j - 1];
    const double dx = path.values[j] - x;
    const double c = checked_scale(scale, x, gamma_hat);
    const double w = 1.0 / (c * c);
    const double resid = dx - h * drift.value(x, alpha);
    const double a1 = drift.d_param(x, alpha);
    const double a2 = drift.d2_param(x, alpha);
    value += resid * resid * w / h;
    grad += resid * a1 * w;
    hess += (resid * a2 - h * a1 * a1) * w;
  }
  const double T = path.horizon();
  return {-value / T, 2.0 * grad / T, 2.0 * hess / T};
}

double g2_cross_derivative(const SamplePath& path, const DriftFamily& drift,
                           const ScaleFamily& scale, double gamma, double alpha) {
  require_path(path);
  const double h = path.h;
  double acc = 0.0;
  for (long j = 1; j <= path.n(); ++j) {
    const double x = path.values[j - 1];
    const double dx = path.values[j] - x;
    const double c = checked_scale(scale, x, gamma);
    const double resid = dx - h * drift.value(x, alpha);
    acc += resid * drift.d_param(x, alpha) * (-2.0 * scale.d_param(x, gamma) / (c * c * c));
  }
  return 2.0 * acc / path.horizon();
}

std::string to_string(EstimationMethod method) {
  switch (method) {
    case EstimationMethod::ClosedForm: return "closed-form";
    case EstimationMethod::Newton: return "newton";
    case EstimationMethod::GridFallback: return "grid-fallback";
  }
  return "unknown";
}

StageResult estimate_scale(const SamplePath& path, const ModelSpec& model,
                           const EstimationOptions& options) {
  require_path(path);
  validate(model);
  const ParameterInterval& box = model.gamma_box;
  const double h = path.h;

  double weighted_qv = 0.0;
  for (long j = 1; j <= path.n(); ++j) {
    const double x = path.values[j - 1];
    const double s = model.scale.shape(x);
    const double dx = path.values[j] - x;
    weighted_qv += dx * dx / (s * s);
  }
  if (!std::isfinite(weighted_qv)) {
    throw Error(ErrorKind::EstimationFailure, "non-finite quadratic variation");
  }
  if (weighted_qv == 0.0) return degenerate_stage(box.lo);

  auto objective = [&](double g) { return g1_eval(path, model.scale, g); };
  if (options.force_newton || !model.scale.linear_in_param()) {
    return from_maximizer(maximize_scalar(objective, box, options.maximize));
  }
  // c = gamma s(x): dG1/dgamma = 0 gives gamma^2 = sum (dX/s)^2 / (n h).
  const double root = std::sqrt(weighted_qv / (static_cast<double>(path.n()) * h));
  StageResult r;
  r.estimate = box.clamp(root);
  const ObjectiveEval e = objective(r.estimate);
  r.objective = e.value;
  r.gradient = e.gradient;
  r.converged = true;
  r.on_boundary = r.estimate != root;
  r.method = EstimationMethod::ClosedForm;
  return r;
}

StageResult estimate_drift(const SamplePath& path, const ModelSpec& model, double gamma_hat,
                           const EstimationOptions& options) {
  require_path(path);
  validate(model);
  const ParameterInterval& box = model.alpha_box;
  auto objective = [&](double a) {
    return g2_eval(path, model.drift, model.scale, gamma_hat, a);
  };
  if (options.force_newton || !model.drift.linear_in_param()) {
    MaximizeOptions mo = options.maximize;
    mo.log_grid = false;
    return from_maximizer(maximize_scalar(objective, box, mo));
  }
  // a = alpha b(x): alpha = sum b dX / c^2 / (h sum b^2 / c^2).
  const double h = path.h;
  double num = 0.0;
  double den = 0.0;
  for (long j = 1; j <= path.n(); ++j) {
    const double x = path.values[j - 1];
    const double c = checked_scale(model.scale, x, gamma_hat);
    const double b = model.drift.d_param(x, 0.0);
    const double w = 1.0 / (c * c);
    num += b * (path.values[j] - x) * w;
    den += h * b * b * w;
  }
  if (!std::isfinite(num) || !std::isfinite(den)) {
    throw Error(ErrorKind::EstimationFailure, "non-finite drift normal equations");
  }
  if (den == 0.0) return degenerate_stage(box.lo);
  const double solution = num / den;
  StageResult r;
  r.estimate = box.clamp(solution);
  const ObjectiveEval e = objective(r.estimate);
  r.objective = e.value;
  r.gradient = e.gradient;
  r.converged = true;
  r.on_boundary = r.estimate != solution;
  r.method = EstimationMethod::ClosedForm;
  return r;
}

EstimateResult estimate_staged(const SamplePath& path, const ModelSpec& model,
                               const EstimationOptions& options) {
  EstimateResult result;
  try {
    result.scale = estimate_scale(path, model, options);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage 1 (scale): ") + e.what());
  }
  result.gamma_hat = result.scale.estimate;
  try {
    result.drift = estimate_drift(path, model, result.gamma_hat, options);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage 2 (drift): ") + e.what());
  }
  result.alpha_hat = result.drift.estimate;
  return result;
}

ClosedFormEstimate closed_form_example(const SamplePath& path, bool literal_denominator) {
  require_path(path);
  const double h = path.h;
  const long n = path.n();
  double qv = 0.0;
  double num = 0.0;
  double den = 0.0;
  for (long j = 1; j <= n; ++j) {
    const double x = path.values[j - 1];
    const double dx = path.values[j] - x;
    const double w = x * x + 1.0;
    qv += dx * dx * w;
    num += (1.0 - x) * dx * w;
    const double lever = literal_denominator ? path.values[j] - 1.0 : x - 1.0;
    den += h * lever * lever * w;
  }
  if (den == 0.0) {
    throw Error(ErrorKind::DegeneratePath, "closed-form drift denominator vanishes");
  }
  ClosedFormEstimate out;
  out.gamma_hat = std::sqrt(qv / (static_cast<double>(n) * h));
  out.gamma_degenerate = qv == 0.0;
  out.alpha_hat = num / den;
  return out;
}

ModelSpec reference_fit_model() {
  ModelSpec m;
  m.drift.kind = DriftKind::MeanRevertLinear;
  m.drift.level = 1.0;
  m.scale.kind = ScaleKind::RationalSqrt;
  return m;
}

}  // namespace levy_gqmle

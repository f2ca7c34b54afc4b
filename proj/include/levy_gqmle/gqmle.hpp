#pragma once

#include <string>

#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/optimize.hpp"
#include "levy_gqmle/sde.hpp"

namespace levy_gqmle {

/// Stage-one Gaussian quasi-likelihood
///   G1(gamma) = -(1/T) sum { h log c_{j-1}^2(gamma) + (dX_j)^2 / c_{j-1}^2(gamma) }
/// with its first two gamma-derivatives.
ObjectiveEval g1_eval(const SamplePath& path, const ScaleFamily& scale, double gamma);

/// Stage-two weighted least squares
///   G2(alpha) = -(1/T) sum (dX_j - h a_{j-1}(alpha))^2 / (h c_{j-1}^2(gamma_hat)).
ObjectiveEval g2_eval(const SamplePath& path, const DriftFamily& drift, const ScaleFamily& scale,
                      double gamma_hat, double alpha);

/// d/dgamma of dG2/dalpha, used for the cross term of the limit Jacobian.
double g2_cross_derivative(const SamplePath& path, const DriftFamily& drift,
                           const ScaleFamily& scale, double gamma, double alpha);

enum class EstimationMethod { ClosedForm, Newton, GridFallback };

std::string to_string(EstimationMethod method);

struct EstimationOptions {
  bool force_newton = false;  // skip closed forms (cross-checking)
  MaximizeOptions maximize;
};

struct StageResult {
  double estimate = 0.0;
  double objective = 0.0;
  double gradient = 0.0;
  int iterations = 0;
  bool converged = false;
  bool on_boundary = false;
  bool degenerate = false;
  EstimationMethod method = EstimationMethod::ClosedForm;
};

struct EstimateResult {
  double gamma_hat = 0.0;
  double alpha_hat = 0.0;
  StageResult scale;
  StageResult drift;
};

StageResult estimate_scale(const SamplePath& path, const ModelSpec& model,
                           const EstimationOptions& options = {});

StageResult estimate_drift(const SamplePath& path, const ModelSpec& model, double gamma_hat,
                           const EstimationOptions& options = {});

/// Stage one then stage two with gamma_hat plugged in. Errors are re-thrown
/// with the failing stage named.
EstimateResult estimate_staged(const SamplePath& path, const ModelSpec& model,
                               const EstimationOptions& options = {});

struct ClosedFormEstimate {
  double alpha_hat = 0.0;
  double gamma_hat = 0.0;
  bool gamma_degenerate = false;  // zero quadratic variation
};

/// Explicit estimators for a(x, alpha) = alpha (1 - x), c(x, gamma) = gamma / sqrt(1 + x^2).
/// The alpha denominator is h sum (X_{j-1} - 1)^2 (X_{j-1}^2 + 1), which is what
/// dG2/dalpha = 0 gives; `literal_denominator` uses (X_j - 1)^2 instead.
ClosedFormEstimate closed_form_example(const SamplePath& path, bool literal_denominator = false);

/// Reference fit: MeanRevertLinear(m = 1) drift, RationalSqrt scale.
ModelSpec reference_fit_model();

}  // namespace levy_gqmle

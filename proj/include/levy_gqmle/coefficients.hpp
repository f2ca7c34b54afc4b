#pragma once

#include <string>

namespace levy_gqmle {

enum class DriftKind {
  MeanRevertLinear,  // a(x, alpha) = alpha (m - x)
  Constant,          // a(x, alpha) = alpha
  LinearDecay,       // a(x, alpha) = -alpha x
};

enum class ScaleKind {
  RationalSqrt,  // c(x, gamma) = gamma / sqrt(1 + x^2)
  Constant,      // c(x, gamma) = gamma
};

/// Parametric drift family with analytic derivatives.
struct DriftFamily {
  DriftKind kind = DriftKind::LinearDecay;
  double level = 0.0;  // m for MeanRevertLinear

  double value(double x, double alpha) const;
  double d_param(double x, double alpha) const;
  double d2_param(double x, double alpha) const;
  double d_x(double x, double alpha) const;
  /// True when a(x, alpha) = alpha * d_param(x); all catalog families are.
  bool linear_in_param() const { return true; }
};

/// Parametric scale family; every catalog member is c(x, gamma) = gamma s(x).
struct ScaleFamily {
  ScaleKind kind = ScaleKind::Constant;

  double value(double x, double gamma) const;
  double d_param(double x, double gamma) const;
  double d2_param(double x, double gamma) const;
  double d_x(double x, double gamma) const;
  /// s(x) with c(x, gamma) = gamma s(x).
  double shape(double x) const;
  bool linear_in_param() const { return true; }
};

struct ParameterInterval {
  double lo;
  double hi;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

/// Fitted model dX = a(X, alpha) dt + c(X-, gamma) dZ with bounded parameter boxes.
struct ModelSpec {
  DriftFamily drift;
  ScaleFamily scale;
  ParameterInterval alpha_box{0.0, 10.0};
  ParameterInterval gamma_box{0.05, 20.0};
};

/// Data-generating coefficients A(x) = a(x, alpha0), C(x) = c(x, gamma0).
struct TrueModel {
  DriftFamily drift;
  double alpha = 0.5;
  ScaleFamily scale;
  double gamma = 1.0;

  double A(double x) const { return drift.value(x, alpha); }
  double C(double x) const { return scale.value(x, gamma); }
  /// OU-type (linear mean-reverting drift, constant scale): stationary law known.
  bool is_linear_ou() const;
  /// Mean-reversion rate for linear drifts, 0 otherwise.
  double reversion_rate() const;
};

void validate(const ModelSpec& model);
void validate(const TrueModel& model);

std::string to_string(DriftKind kind);
std::string to_string(ScaleKind kind);
DriftKind drift_kind_from_string(const std::string& name);
ScaleKind scale_kind_from_string(const std::string& name);

}  // namespace levy_gqmle

#include "levy_gqmle/coefficients.hpp"

#include <cmath>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

double DriftFamily::value(double x, double alpha) const {
  return alpha * d_param(x, alpha);
}

double DriftFamily::d_param(double x, double) const {
  switch (kind) {
    case DriftKind::MeanRevertLinear: return level - x;
    case DriftKind::Constant: return 1.0;
    case DriftKind::LinearDecay: return -x;
  }
  return 0.0;
}

double DriftFamily::d2_param(double, double) const { return 0.0; }

double DriftFamily::d_x(double, double alpha) const {
  switch (kind) {
    case DriftKind::MeanRevertLinear: return -alpha;
    case DriftKind::Constant: return 0.0;
    case DriftKind::LinearDecay: return -alpha;
  }
  return 0.0;
}

double ScaleFamily::shape(double x) const {
  switch (kind) {
    case ScaleKind::RationalSqrt: return 1.0 / std::sqrt(1.0 + x * x);
    case ScaleKind::Constant: return 1.0;
  }
  return 1.0;
}

double ScaleFamily::value(double x, double gamma) const { return gamma * shape(x); }

double ScaleFamily::d_param(double x, double) const { return shape(x); }

double ScaleFamily::d2_param(double, double) const { return 0.0; }

double ScaleFamily::d_x(double x, double gamma) const {
  switch (kind) {
    case ScaleKind::RationalSqrt: return -gamma * x / std::pow(1.0 + x * x, 1.5);
    case ScaleKind::Constant: return 0.0;
  }
  return 0.0;
}

bool TrueModel::is_linear_ou() const {
  return drift.kind != DriftKind::Constant && scale.kind == ScaleKind::Constant;
}

double TrueModel::reversion_rate() const {
  return drift.kind == DriftKind::Constant ? 0.0 : alpha;
}

void validate(const ModelSpec& model) {
  const auto& a = model.alpha_box;
  const auto& g = model.gamma_box;
  if (!(std::isfinite(a.lo) && std::isfinite(a.hi) && a.lo < a.hi)) {
    throw Error(ErrorKind::ParameterDomain, "alpha box must be a bounded non-empty interval");
  }
  if (!(std::isfinite(g.lo) && std::isfinite(g.hi) && g.lo < g.hi)) {
    throw Error(ErrorKind::ParameterDomain, "gamma box must be a bounded non-empty interval");
  }
  if (!(g.lo > 0.0)) {
    throw Error(ErrorKind::ParameterDomain, "gamma box must be bounded away from 0");
  }
  if (!std::isfinite(model.drift.level)) {
    throw Error(ErrorKind::ParameterDomain, "drift level must be finite");
  }
}

void validate(const TrueModel& model) {
  if (!std::isfinite(model.alpha) || !std::isfinite(model.drift.level)) {
    throw Error(ErrorKind::ParameterDomain, "true drift parameters must be finite");
  }
  // gamma = 0 is allowed: C == 0 gives a deterministic path.
  if (!(model.gamma >= 0.0) || !std::isfinite(model.gamma)) {
    throw Error(ErrorKind::ParameterDomain, "true scale parameter must be >= 0");
  }
}

std::string to_string(DriftKind kind) {
  switch (kind) {
    case DriftKind::MeanRevertLinear: return "mean_revert_linear";
    case DriftKind::Constant: return "constant";
    case DriftKind::LinearDecay: return "linear_decay";
  }
  return "unknown";
}

std::string to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::RationalSqrt: return "rational_sqrt";
    case ScaleKind::Constant: return "constant";
  }
  return "unknown";
}

DriftKind drift_kind_from_string(const std::string& name) {
  if (name == "mean_revert_linear") return DriftKind::MeanRevertLinear;
  if (name == "constant") return DriftKind::Constant;
  if (name == "linear_decay") return DriftKind::LinearDecay;
  throw Error(ErrorKind::ParameterDomain, "unknown drift family '" + name + "'");
}

ScaleKind scale_kind_from_string(const std::string& name) {
  if (name == "rational_sqrt") return ScaleKind::RationalSqrt;
  if (name == "constant") return ScaleKind::Constant;
  throw Error(ErrorKind::ParameterDomain, "unknown scale family '" + name + "'");
}

}  // namespace levy_gqmle

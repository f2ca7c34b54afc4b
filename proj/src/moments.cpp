#include "levy_gqmle/moments.hpp"

#include <cmath>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

double residual_moment(const SamplePath& path, const EstimateResult& est, const ModelSpec& model,
                       int r) {
  if (r < 2) throw Error(ErrorKind::ParameterDomain, "residual moment order must be >= 2");
  if (!std::isfinite(est.alpha_hat) || !std::isfinite(est.gamma_hat)) {
    throw Error(ErrorKind::ParameterDomain, "estimates must be finite");
  }
  if (path.values.size() < 2) throw Error(ErrorKind::ParameterDomain, "path too short");
  const double h = path.h;
  double acc = 0.0;
  for (long j = 1; j <= path.n(); ++j) {
    const double x = path.values[j - 1];
    const double c = model.scale.value(x, est.gamma_hat);
    if (!(c > 0.0)) throw Error(ErrorKind::ParameterDomain, "scale coefficient is not positive");
    const double e = (path.values[j] - x - h * model.drift.value(x, est.alpha_hat)) / c;
    acc += std::pow(e, r);
  }
  return acc / path.horizon();
}

}  // namespace levy_gqmle

#pragma once

#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/gqmle.hpp"
#include "levy_gqmle/sde.hpp"

namespace levy_gqmle {

/// (1/T) sum ((dX_j - h a_{j-1}(alpha_hat)) / c_{j-1}(gamma_hat))^r, which
/// estimates int z^r nu0(dz) for r >= 2.
double residual_moment(const SamplePath& path, const EstimateResult& est, const ModelSpec& model,
                       int r);

}  // namespace levy_gqmle

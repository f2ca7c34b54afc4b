#pragma once

#include <functional>
#include <limits>

#include "levy_gqmle/coefficients.hpp"

namespace levy_gqmle {

struct ObjectiveEval {
  double value = 0.0;
  double gradient = 0.0;
  double hessian = 0.0;
};

using ScalarObjective = std::function<ObjectiveEval(double)>;

enum class MaximizeMethod { Newton, GridFallback };

struct MaximizeOptions {
  int max_iter = 100;
  double tol = 1e-12;  // relative step tolerance
  int grid_points = 200;
  bool log_grid = true;  // log-spaced fallback grid when the box is positive
  double start = std::numeric_limits<double>::quiet_NaN();
};

struct MaximizeResult {
  double argmax = 0.0;
  double value = 0.0;
  double gradient = 0.0;
  int iterations = 0;
  bool converged = false;
  bool on_boundary = false;
  MaximizeMethod method = MaximizeMethod::Newton;
};

/// Safeguarded Newton ascent on a closed interval: the step is halved until the
/// objective does not decrease, iterates are projected onto the box, and a
/// non-negative hessian triggers a grid search (ties toward the smaller value)
/// from whose best point Newton restarts.
MaximizeResult maximize_scalar(const ScalarObjective& objective, const ParameterInterval& box,
                               const MaximizeOptions& options = {});

}  // namespace levy_gqmle

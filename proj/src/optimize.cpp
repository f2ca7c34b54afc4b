#include "levy_gqmle/optimize.hpp"

#include <cmath>

#include "levy_gqmle/errors.hpp"

namespace levy_gqmle {

namespace {

bool finite(const ObjectiveEval& e) {
  return std::isfinite(e.value) && std::isfinite(e.gradient) && std::isfinite(e.hessian);
}

double grid_point(const ParameterInterval& box, int i, int count, bool log_spaced) {
  const double frac = count > 1 ? static_cast<double>(i) / (count - 1) : 0.5;
  if (log_spaced) return std::exp(std::log(box.lo) + frac * (std::log(box.hi) - std::log(box.lo)));
  return box.lo + frac * (box.hi - box.lo);
}

}  // namespace

MaximizeResult maximize_scalar(const ScalarObjective& objective, const ParameterInterval& box,
                               const MaximizeOptions& options) {
  const bool log_spaced = options.log_grid && box.lo > 0.0;
  auto grid_search = [&](double& best_x, ObjectiveEval& best) {
    bool found = false;
    for (int i = 0; i < options.grid_points; ++i) {
      const double x = grid_point(box, i, options.grid_points, log_spaced);
      const ObjectiveEval e = objective(x);
      if (!finite(e)) continue;
      if (!found || e.value > best.value) {
        best = e;
        best_x = x;
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorKind::EstimationFailure, "objective non-finite on the whole grid");
    }
  };

  MaximizeResult result;
  double x = options.start;
  if (!std::isfinite(x)) {
    x = log_spaced ? std::sqrt(box.lo * box.hi) : 0.5 * (box.lo + box.hi);
  }
  x = box.clamp(x);
  ObjectiveEval current = objective(x);
  bool grid_used = false;
  if (!finite(current)) {
    grid_search(x, current);
    grid_used = true;
  }

  for (int iter = 0; iter < options.max_iter; ++iter) {
    result.iterations = iter + 1;
    // Boundary maximum: gradient points out of the box.
    if ((x <= box.lo && current.gradient <= 0.0) || (x >= box.hi && current.gradient >= 0.0)) {
      result.converged = true;
      result.on_boundary = true;
      break;
    }
    if (!(current.hessian < 0.0)) {
      if (grid_used) break;
      grid_search(x, current);
      grid_used = true;
      continue;
    }
    const double step = -current.gradient / current.hessian;
    double candidate = box.clamp(x + step);
    ObjectiveEval next = objective(candidate);
    int halvings = 0;
    while ((!finite(next) || next.value < current.value) && halvings < 60) {
      candidate = x + 0.5 * (candidate - x);
      next = objective(candidate);
      ++halvings;
    }
    if (!finite(next) || next.value < current.value) break;  // no ascent possible
    const double moved = std::abs(candidate - x);
    x = candidate;
    current = next;
    if (moved <= options.tol * (1.0 + std::abs(x))) {
      result.converged = true;
      result.on_boundary = x <= box.lo || x >= box.hi;
      break;
    }
  }
  result.argmax = x;
  result.value = current.value;
  result.gradient = current.gradient;
  result.method = grid_used ? MaximizeMethod::GridFallback : MaximizeMethod::Newton;
  return result;
}

}  // namespace levy_gqmle

#include "levy_gqmle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace levy_gqmle {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  std::vector<double> value;
  std::vector<double> error;
  double priority;
  bool operator<(const Segment& other) const { return priority < other.priority; }
};

void eval_segment(const VectorIntegrand& f, int dim, double a, double b, Segment& s,
                  std::vector<double>& scratch) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  s.a = a;
  s.b = b;
  std::vector<double> kronrod(dim);
  std::vector<double> gauss(dim);
  f(center, scratch.data());
  for (int k = 0; k < dim; ++k) {
    kronrod[k] = kKronrodWeights[7] * scratch[k];
    gauss[k] = kGaussWeights[3] * scratch[k];
  }
  double* lo = scratch.data();
  double* hi = scratch.data() + dim;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    f(center - dx, lo);
    f(center + dx, hi);
    for (int k = 0; k < dim; ++k) {
      const double sum = lo[k] + hi[k];
      kronrod[k] += kKronrodWeights[i] * sum;
      if (i % 2 == 1) gauss[k] += kGaussWeights[i / 2] * sum;
    }
  }
  s.value.resize(dim);
  s.error.resize(dim);
  for (int k = 0; k < dim; ++k) {
    s.value[k] = kronrod[k] * half;
    s.error[k] = std::abs(kronrod[k] - gauss[k]) * half;
  }
}

}  // namespace

VectorQuadratureResult integrate_gk15_vector(const VectorIntegrand& f, int dim, double a,
                                             double b, double rel_tol, double abs_tol,
                                             int max_intervals) {
  VectorQuadratureResult result;
  result.value.assign(dim, 0.0);
  result.error.assign(dim, 0.0);
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::vector<double> scratch(2 * static_cast<std::size_t>(dim));
  Segment first;
  eval_segment(f, dim, a, b, first, scratch);
  result.evaluations = 15;
  // Component error scales, fixed from the first estimate.
  std::vector<double> scale(dim);
  for (int k = 0; k < dim; ++k) scale[k] = std::max(std::abs(first.value[k]), abs_tol);
  auto priority = [&](const Segment& s) {
    double p = 0.0;
    for (int k = 0; k < dim; ++k) p = std::max(p, s.error[k] / scale[k]);
    return p;
  };
  first.priority = priority(first);
  std::vector<double> total = first.value;
  std::vector<double> total_error = first.error;
  auto done = [&] {
    for (int k = 0; k < dim; ++k) {
      if (!std::isfinite(total[k]) || !std::isfinite(total_error[k])) return false;
      if (total_error[k] > std::max(abs_tol, rel_tol * std::abs(total[k]))) return false;
    }
    return true;
  };
  std::priority_queue<Segment> heap;
  heap.push(std::move(first));
  int intervals = 1;
  while (!done()) {
    if (intervals >= max_intervals) break;
    bool finite = true;
    for (int k = 0; k < dim; ++k) finite = finite && std::isfinite(total[k]);
    if (!finite) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(std::move(worst));
      break;
    }
    Segment left;
    Segment right;
    eval_segment(f, dim, worst.a, mid, left, scratch);
    eval_segment(f, dim, mid, worst.b, right, scratch);
    left.priority = priority(left);
    right.priority = priority(right);
    result.evaluations += 30;
    for (int k = 0; k < dim; ++k) {
      total[k] += left.value[k] + right.value[k] - worst.value[k];
      total_error[k] += left.error[k] + right.error[k] - worst.error[k];
    }
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++intervals;
  }
  // Re-sum to drop the accumulated cancellation in the running totals.
  std::fill(total.begin(), total.end(), 0.0);
  std::fill(total_error.begin(), total_error.end(), 0.0);
  while (!heap.empty()) {
    for (int k = 0; k < dim; ++k) {
      total[k] += heap.top().value[k];
      total_error[k] += heap.top().error[k];
    }
    heap.pop();
  }
  result.value = total;
  result.error = total_error;
  result.converged = done();
  return result;
}

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, double abs_tol, int max_intervals) {
  const VectorIntegrand g = [&f](double x, double* out) { out[0] = f(x); };
  const VectorQuadratureResult v = integrate_gk15_vector(g, 1, a, b, rel_tol, abs_tol,
                                                         max_intervals);
  return {v.value[0], v.error[0], v.evaluations, v.converged};
}

}  // namespace levy_gqmle

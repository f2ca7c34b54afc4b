#include "levy_gqmle/random.hpp"

#include <cmath>

namespace levy_gqmle {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  double u = uniform_(engine_);
  while (u <= 0.0) u = uniform_(engine_);
  return u;
}

double RandomStream::normal() { return normal_(engine_); }

double RandomStream::gamma(double shape) {
  // Marsaglia-Tsang; shapes below one are boosted by U^(1/shape) in log space
  // so that tiny shapes (small time steps) do not lose precision.
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    const double log_value = std::log(g) + std::log(uniform()) / shape;
    return std::exp(log_value);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace levy_gqmle

#pragma once

#include <cstdint>
#include <random>

namespace levy_gqmle {

/// Explicit random stream. All library randomness goes through one of these,
/// so results are a pure function of (seed, stream id).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  double uniform();            // (0, 1), never exactly 0
  double normal();             // standard normal
  double gamma(double shape);  // unit scale

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Independent stream for replicate / path `id` under a master seed.
inline RandomStream make_stream(std::uint64_t seed, std::uint64_t id) {
  return RandomStream(seed, id);
}

}  // namespace levy_gqmle

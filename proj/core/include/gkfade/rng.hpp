#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gkfade {

/// xoshiro256** with jump-ahead.  Substream k of a seed is the seeded state
/// advanced by k jumps of 2^128 steps, so (seed, k) fully determines it and
/// distinct substreams never overlap in practice.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t seed);
  static StreamRng for_stream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Advances the state by 2^128 draws.
  void jump();

  /// Uniform double on the open interval (0, 1).
  double uniform_open();

 private:
  std::array<std::uint64_t, 4> state_{};
};

/// Standard normal deviate (Marsaglia polar method).
double standard_normal(StreamRng& rng);

/// Gamma(shape, scale) deviate by Marsaglia–Tsang squeeze/rejection.  Shapes
/// below one use the Gamma(shape + 1) · U^{1/shape} boost.
double gamma_variate(double shape, double scale, StreamRng& rng);

}  // namespace gkfade

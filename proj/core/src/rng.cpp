#include "gkfade/rng.hpp"

#include <cmath>

#include "gkfade/errors.hpp"

namespace gkfade {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed) {
  for (auto& word : state_) {
    word = splitmix64(seed);
  }
}

StreamRng StreamRng::for_stream(std::uint64_t seed, std::uint64_t stream) {
  StreamRng rng(seed);
  for (std::uint64_t k = 0; k < stream; ++k) {
    rng.jump();
  }
  return rng;
}

StreamRng::result_type StreamRng::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

void StreamRng::jump() {
  static constexpr std::array<std::uint64_t, 4> kJump = {
      0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
      0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (std::size_t i = 0; i < 4; ++i) acc[i] ^= state_[i];
      }
      (*this)();
    }
  }
  state_ = acc;
}

double StreamRng::uniform_open() {
  // 53 random bits, centred in their bucket so 0 and 1 are unreachable.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(StreamRng& rng) {
  while (true) {
    const double u = 2.0 * rng.uniform_open() - 1.0;
    const double v = 2.0 * rng.uniform_open() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double gamma_variate(double shape, double scale, StreamRng& rng) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw DomainError("gamma_variate: shape and scale must be positive and finite");
  }
  if (shape < 1.0) {
    const double boosted = gamma_variate(shape + 1.0, 1.0, rng);
    const double u = rng.uniform_open();
    // U^{1/shape} in log space: tiny shapes would otherwise underflow.
    return scale * boosted * std::exp(std::log(u) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

}  // namespace gkfade

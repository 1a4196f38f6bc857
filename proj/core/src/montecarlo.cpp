#include "gkfade/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gkfade/errors.hpp"
#include "gkfade/rng.hpp"

namespace gkfade {

void McConfig::validate() const {
  if (samples < 10'000) {
    throw DomainError("Monte Carlo: at least 1e4 samples are required");
  }
  if (streams < 1) {
    throw DomainError("Monte Carlo: at least one stream is required");
  }
  if (samples % streams != 0) {
    throw DomainError("Monte Carlo: samples must be divisible by streams");
  }
}

StreamPartial simulate_stream(const ScLink& link, const Modulation& mod, std::uint64_t seed,
                              std::uint64_t stream, std::uint64_t samples, McMode mode) {
  link.validate();
  mod.validate();
  StreamRng rng = StreamRng::for_stream(seed, stream);
  StreamPartial acc;
  for (std::uint64_t n = 0; n < samples; ++n) {
    const double g1 = sample(link.branch1, rng);
    const double g2 = sample(link.branch2, rng);
    double value = cep(mod, std::max(g1, g2));
    if (mode == McMode::bit_level) {
      value = rng.uniform_open() < value ? 1.0 : 0.0;
    }
    // Welford update.
    ++acc.count;
    const double delta = value - acc.mean;
    acc.mean += delta / static_cast<double>(acc.count);
    acc.m2 += delta * (value - acc.mean);
  }
  return acc;
}

McEstimate estimate_ber(const ScLink& link, const Modulation& mod, const McConfig& cfg) {
  cfg.validate();
  link.validate();
  mod.validate();
  const std::uint64_t per_stream = cfg.samples / cfg.streams;

  McEstimate out;
  out.partials.resize(cfg.streams);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, cfg.streams);

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::uint32_t k = next++; k < cfg.streams; k = next++) {
      try {
        out.partials[k] = simulate_stream(link, mod, cfg.seed, k, per_stream, cfg.mode);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Chan et al. pairwise combination, strictly in stream order.
  StreamPartial total;
  for (const StreamPartial& part : out.partials) {
    if (part.count == 0) continue;
    const double n_a = static_cast<double>(total.count);
    const double n_b = static_cast<double>(part.count);
    const double n = n_a + n_b;
    const double delta = part.mean - total.mean;
    total.mean += delta * n_b / n;
    total.m2 += part.m2 + delta * delta * n_a * n_b / n;
    total.count += part.count;
  }
  out.samples = total.count;
  out.ber = total.mean;
  const double variance = total.m2 / static_cast<double>(total.count - 1);
  out.std_error = std::sqrt(variance / static_cast<double>(total.count));
  return out;
}

}  // namespace gkfade

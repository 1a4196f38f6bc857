#pragma once

#include <cstdint>
#include <vector>

#include "gkfade/ber.hpp"

namespace gkfade {

enum class McMode {
  /// Average the conditional error probability over sampled SNRs.
  semi_analytic,
  /// Draw one Bernoulli(cep) bit decision per sampled SNR.
  bit_level,
};

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20110501;
  std::uint32_t streams = 16;
  McMode mode = McMode::semi_analytic;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws DomainError unless samples >= 1e4, streams >= 1 and streams
  /// divides samples.
  void validate() const;
};

/// Running mean and centred second moment of one substream.
struct StreamPartial {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

/// Simulates `samples` draws on substream `stream` of `seed`.
StreamPartial simulate_stream(const ScLink& link, const Modulation& mod, std::uint64_t seed,
                              std::uint64_t stream, std::uint64_t samples, McMode mode);

struct McEstimate {
  double ber = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  /// Per-stream partials, in stream order.
  std::vector<StreamPartial> partials;
};

/// Monte Carlo BER of selection combining: γ_sc = max(γ₁, γ₂) with each γ a
/// product of two gamma variates.  Streams run in parallel and are reduced in
/// stream-index order, so the result depends only on (seed, streams, samples).
McEstimate estimate_ber(const ScLink& link, const Modulation& mod, const McConfig& cfg);

}  // namespace gkfade

#include "gkfade/montecarlo.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "gkfade/errors.hpp"
#include "oracle_values.hpp"

namespace gkfade {
namespace {

ScLink table_three_link() {
  const double omega = std::pow(10.0, 1.5);
  return {{1.0, 2.0, omega}, {1.0, 2.0, omega}};
}

ScLink inid_link(double snr_db) {
  const double omega = std::pow(10.0, snr_db / 10.0);
  return {{1.0, 0.5, omega}, {2.0, 4.0, omega}};
}

McConfig config(std::uint64_t samples, std::uint32_t streams = 16) {
  McConfig c;
  c.samples = samples;
  c.streams = streams;
  return c;
}

TEST(McConfig, Validation) {
  EXPECT_NO_THROW(config(10'000).validate());
  EXPECT_THROW(config(9'999, 1).validate(), DomainError);
  EXPECT_THROW(config(10'000, 0).validate(), DomainError);
  EXPECT_THROW(config(10'001, 16).validate(), DomainError);
}

TEST(MonteCarlo, DeterministicForFixedSeed) {
  const McEstimate a = estimate_ber(inid_link(5.0), Modulation::bpsk(), config(160'000));
  const McEstimate b = estimate_ber(inid_link(5.0), Modulation::bpsk(), config(160'000));
  EXPECT_EQ(a.ber, b.ber);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.samples, 160'000u);
  ASSERT_EQ(a.partials.size(), 16u);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  McConfig one = config(80'000, 8);
  one.threads = 1;
  McConfig many = one;
  many.threads = 4;
  const McEstimate a = estimate_ber(inid_link(10.0), Modulation::dpsk(), one);
  const McEstimate b = estimate_ber(inid_link(10.0), Modulation::dpsk(), many);
  EXPECT_EQ(a.ber, b.ber);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(MonteCarlo, PartialsDependOnlyOnStreamIndex) {
  // Same per-stream allocation (10'000 draws), different stream counts.
  const McEstimate few = estimate_ber(inid_link(0.0), Modulation::bfsk(), config(40'000, 4));
  const McEstimate more = estimate_ber(inid_link(0.0), Modulation::bfsk(), config(80'000, 8));
  for (std::size_t k = 0; k < few.partials.size(); ++k) {
    EXPECT_EQ(few.partials[k].count, more.partials[k].count);
    EXPECT_EQ(few.partials[k].mean, more.partials[k].mean);
    EXPECT_EQ(few.partials[k].m2, more.partials[k].m2);
  }
  const StreamPartial direct =
      simulate_stream(inid_link(0.0), Modulation::bfsk(), McConfig{}.seed, 3, 10'000, McMode::semi_analytic);
  EXPECT_EQ(direct.mean, few.partials[3].mean);
}

TEST(MonteCarlo, DegenerateLinkGivesHalf) {
  const ScLink dark{{1.0, 2.0, 1e-9}, {2.0, 1.0, 1e-9}};
  const McEstimate e = estimate_ber(dark, Modulation::bpsk(), config(16'000));
  EXPECT_NEAR(e.ber, 0.5, 1e-3);
}

TEST(MonteCarlo, ModesAgree) {
  const ScLink link = inid_link(5.0);
  McConfig semi = config(1'000'000);
  McConfig bits = semi;
  bits.mode = McMode::bit_level;
  const McEstimate a = estimate_ber(link, Modulation::dpsk(), semi);
  const McEstimate b = estimate_ber(link, Modulation::dpsk(), bits);
  EXPECT_LT(std::abs(a.ber - b.ber), 3.0 * std::hypot(a.std_error, b.std_error));
  EXPECT_LT(a.std_error, b.std_error);
}

TEST(MonteCarlo, StandardErrorScaling) {
  const McEstimate small = estimate_ber(inid_link(10.0), Modulation::bpsk(), config(100'000));
  const McEstimate large = estimate_ber(inid_link(10.0), Modulation::bpsk(), config(400'000));
  EXPECT_NEAR(small.std_error / large.std_error, 2.0, 0.4);
}

TEST(MonteCarlo, ReferencePointWithinThreeSigma) {
  const McEstimate e = estimate_ber(table_three_link(), Modulation::bpsk(), config(1'000'000));
  EXPECT_LT(std::abs(e.ber - oracle::kBerReferencePoint), 3.0 * e.std_error);
}

}  // namespace
}  // namespace gkfade

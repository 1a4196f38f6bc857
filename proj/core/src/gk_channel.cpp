#include "gkfade/gk_channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gkfade/errors.hpp"
#include "gkfade/special_fn.hpp"

namespace gkfade {
namespace {

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("GK: SNR argument must be positive and finite, got " +
                      std::to_string(gamma));
  }
}

}  // namespace

void GkParams::validate() const {
  auto ok = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!ok(m_m) || !ok(m_s) || !ok(omega0)) {
    throw DomainError("GK parameters must be positive and finite (m_m=" +
                      std::to_string(m_m) + ", m_s=" + std::to_string(m_s) +
                      ", omega0=" + std::to_string(omega0) + ")");
  }
}

double GkParams::b() const { return std::sqrt(rate()); }

double pdf_bessel(const GkParams& params, double gamma) {
  params.validate();
  require_positive_gamma(gamma);
  const double order_sum = params.m_m + params.m_s;
  const double b = params.b();
  const double log_front = std::log(2.0) + order_sum * std::log(b) -
                           std::lgamma(params.m_m) - std::lgamma(params.m_s) +
                           (0.5 * order_sum - 1.0) * std::log(gamma);
  return std::exp(log_front +
                  log_bessel_k(params.m_s - params.m_m, 2.0 * b * std::sqrt(gamma)));
}

MeijerGSpec pdf_spec(const GkParams& params, double gamma) {
  params.validate();
  require_positive_gamma(gamma);
  return MeijerGSpec{{}, {}, {params.m_m - 1.0, params.m_s - 1.0}, {}, params.rate() * gamma};
}

double pdf_meijer(const GkParams& params, double gamma) {
  const MeijerGSpec spec = pdf_spec(params, gamma);
  const double front = std::exp(std::log(params.rate()) - std::lgamma(params.m_m) -
                                std::lgamma(params.m_s));
  return front * eval_meijer_g(spec);
}

MeijerGSpec cdf_spec(const GkParams& params, double gamma) {
  params.validate();
  require_positive_gamma(gamma);
  return MeijerGSpec{{1.0}, {}, {params.m_m, params.m_s}, {0.0}, params.rate() * gamma};
}

MeijerGSpec ccdf_spec(const GkParams& params, double gamma) {
  params.validate();
  require_positive_gamma(gamma);
  return MeijerGSpec{{}, {1.0}, {params.m_m, params.m_s, 0.0}, {}, params.rate() * gamma};
}

namespace {

double checked_probability(double value, const char* what) {
  if (value < -1e-6 || value > 1.0 + 1e-6) {
    throw ConvergenceError(std::string(what) + " evaluated to " + std::to_string(value) +
                           ", outside [0, 1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

double norm_of(const GkParams& params) {
  return std::exp(-std::lgamma(params.m_m) - std::lgamma(params.m_s));
}

}  // namespace

double ccdf(const GkParams& params, double gamma) {
  const MeijerGSpec spec = ccdf_spec(params, gamma);
  return checked_probability(norm_of(params) * eval_meijer_g(spec), "GK CCDF");
}

double cdf(const GkParams& params, double gamma) {
  const MeijerGSpec spec = cdf_spec(params, gamma);
  const double value = checked_probability(norm_of(params) * eval_meijer_g(spec), "GK CDF");
  // In the upper half the complement is the small, accurately computed
  // quantity; 1 - F from it stays monotone out to F = 1.
  if (value <= 0.5) return value;
  return checked_probability(1.0 - ccdf(params, gamma), "GK CDF");
}

double sample(const GkParams& params, StreamRng& rng) {
  const double multipath = gamma_variate(params.m_m, 1.0 / params.m_m, rng);
  const double shadowing = gamma_variate(params.m_s, params.omega0 / params.m_s, rng);
  return multipath * shadowing;
}

}  // namespace gkfade

#include "gkfade/ber.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gkfade/errors.hpp"
#include "gkfade/special_fn.hpp"

namespace gkfade {

Modulation Modulation::from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bpsk") return bpsk();
  if (lower == "dpsk") return dpsk();
  if (lower == "bfsk") return bfsk();
  throw DomainError("unknown modulation '" + std::string(name) +
                    "' (expected bpsk, dpsk or bfsk)");
}

void Modulation::validate() const {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("modulation parameters p and q must be positive and finite");
  }
}

double cep(const Modulation& mod, double gamma) {
  mod.validate();
  if (!(gamma >= 0.0)) {
    throw DomainError("cep: SNR must be non-negative, got " + std::to_string(gamma));
  }
  const double x = mod.q * gamma;
  // Exact closed forms for the two exponents every preset uses.
  if (mod.p == 0.5) return 0.5 * std::erfc(std::sqrt(x));
  if (mod.p == 1.0) return 0.5 * std::exp(-x);
  return 0.5 * regularized_upper_gamma(mod.p, x);
}

double sc_cdf(const ScLink& link, double gamma) {
  return cdf(link.branch1, gamma) * cdf(link.branch2, gamma);
}

double kappa1(const ScLink& link) {
  link.validate();
  return std::exp(-std::lgamma(link.branch1.m_m) - std::lgamma(link.branch1.m_s) -
                  std::lgamma(link.branch2.m_m) - std::lgamma(link.branch2.m_s));
}

EgbmgfSpec cdf_product_spec(const ScLink& link, double gamma) {
  link.validate();
  if (!(gamma > 0.0)) {
    throw DomainError("cdf_product_spec: SNR must be positive");
  }
  EgbmgfSpec spec;
  spec.x_block = VariableBlock{{1.0}, {}, {link.branch1.m_m, link.branch1.m_s}, {0.0}};
  spec.y_block = VariableBlock{{1.0}, {}, {link.branch2.m_m, link.branch2.m_s}, {0.0}};
  spec.x = link.branch1.rate() * gamma;
  spec.y = link.branch2.rate() * gamma;
  return spec;
}

BerEvaluation evaluate_ber_closed_form(const ScLink& link, const Modulation& mod) {
  mod.validate();
  const EgbmgfSpec product = cdf_product_spec(link, 1.0);
  const LaplaceImage image = laplace_image(product, mod.p, mod.q);

  BerEvaluation out;
  out.detail = evaluate_egbmgf(image.spec);
  check_imag_residual(out.detail.value, out.detail.imag_residual, "BER closed form");
  const double front = std::exp(mod.p * std::log(mod.q) - std::lgamma(mod.p)) * 0.5 *
                       kappa1(link) * image.prefactor;
  out.ber = front * out.detail.value;
  out.below_validated_range = out.ber < 1e-12;
  return out;
}

double ber_closed_form(const ScLink& link, const Modulation& mod) {
  return evaluate_ber_closed_form(link, mod).ber;
}

double ber_numeric(const ScLink& link, const Modulation& mod) {
  link.validate();
  mod.validate();
  const double log_front = mod.p * std::log(mod.q) - std::lgamma(mod.p) - std::log(2.0);
  auto integrand = [&](double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) return 0.0;
    const double weight =
        std::exp(log_front - mod.q * gamma + (mod.p - 1.0) * std::log(gamma));
    if (weight == 0.0) return 0.0;
    return weight * sc_cdf(link, gamma);
  };

  constexpr double tol = 1e-10;
  const double knee = mod.p / mod.q;
  boost::math::quadrature::tanh_sinh<double> near;
  boost::math::quadrature::exp_sinh<double> far;
  double err_near = 0.0;
  double err_far = 0.0;
  const double head = near.integrate(integrand, 0.0, knee, tol, &err_near);
  const double tail = far.integrate(integrand, knee, std::numeric_limits<double>::infinity(),
                                    tol, &err_far);
  const double total = head + tail;
  if (!std::isfinite(total) || err_near + err_far > 1e-7 * std::abs(total)) {
    throw ConvergenceError("ber_numeric: quadrature error estimate too large");
  }
  return total;
}

}  // namespace gkfade

#pragma once

#include <string>
#include <string_view>

#include "gkfade/egbmgf.hpp"
#include "gkfade/gk_channel.hpp"

namespace gkfade {

/// Binary modulation in the unified conditional-error form Γ(p, qγ)/(2Γ(p)).
struct Modulation {
  double p = 0.5;
  double q = 1.0;
  std::string name;

  static Modulation bpsk() { return {0.5, 1.0, "bpsk"}; }
  static Modulation dpsk() { return {1.0, 1.0, "dpsk"}; }
  static Modulation bfsk() { return {0.5, 0.5, "bfsk"}; }

  /// Preset by name (case-insensitive): bpsk, dpsk or bfsk.
  static Modulation from_name(std::string_view name);

  void validate() const;
};

/// Dual-branch selection combiner over independent GK branches.
struct ScLink {
  GkParams branch1;
  GkParams branch2;

  void validate() const {
    branch1.validate();
    branch2.validate();
  }
};

/// Conditional bit error probability Γ(p, qγ) / (2Γ(p)).
double cep(const Modulation& mod, double gamma);

/// CDF of max(γ₁, γ₂): the product of the branch CDFs.
double sc_cdf(const ScLink& link, double gamma);

/// 1 / (Γ(m_m1)Γ(m_s1)Γ(m_m2)Γ(m_s2)).
double kappa1(const ScLink& link);

/// Bivariate spec whose value times kappa1 equals F₁(γ)F₂(γ): empty joint
/// block, per-variable blocks (1; m_m, m_s, 0) of order (2,1;1,3), arguments
/// rate₁·γ and rate₂·γ.
EgbmgfSpec cdf_product_spec(const ScLink& link, double gamma);

struct BerEvaluation {
  double ber = 0.0;
  /// Below 1e-12 the double-contour accuracy is not certified.
  bool below_validated_range = false;
  EgbmgfResult detail;
};

/// Closed-form average BER: the Laplace image (λ = p, μ = q) of the CDF
/// product spec, scaled by q^p κ₁ / (2Γ(p)).
BerEvaluation evaluate_ber_closed_form(const ScLink& link, const Modulation& mod);
double ber_closed_form(const ScLink& link, const Modulation& mod);

/// Average BER by direct quadrature of
///   q^p/(2Γ(p)) ∫₀^∞ e^{-qγ} γ^{p-1} F₁(γ) F₂(γ) dγ,
/// split at the CEP knee γ = p/q.  Throws ConvergenceError if the quadrature
/// error estimate is not small.
double ber_numeric(const ScLink& link, const Modulation& mod);

}  // namespace gkfade

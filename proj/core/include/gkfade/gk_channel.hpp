#pragma once

#include "gkfade/mellin_barnes.hpp"
#include "gkfade/rng.hpp"

namespace gkfade {

/// Generalized-K (Gamma–Gamma) fading of one branch.  Small m_m / m_s mean
/// severe multipath fading / shadowing.
struct GkParams {
  double m_m = 1.0;     ///< Nakagami multipath parameter
  double m_s = 1.0;     ///< shadowing parameter
  double omega0 = 1.0;  ///< mean local power (linear average SNR)

  /// Throws DomainError unless all three are positive and finite.
  void validate() const;

  /// m_m m_s / Ω₀, the scale of the Meijer G argument.
  double rate() const { return m_m * m_s / omega0; }

  /// b = sqrt(m_m m_s / Ω₀).
  double b() const;
};

/// PDF in its Bessel form,
/// 2 b^{m_m+m_s} / (Γ(m_m)Γ(m_s)) γ^{(m_m+m_s)/2-1} K_{m_s-m_m}(2b√γ).
double pdf_bessel(const GkParams& params, double gamma);

/// G^{2,0}_{0,2}[rate·γ | -; m_m-1, m_s-1], the Meijer form of the PDF.
MeijerGSpec pdf_spec(const GkParams& params, double gamma);

/// rate / (Γ(m_m)Γ(m_s)) times the Meijer G of pdf_spec().
double pdf_meijer(const GkParams& params, double gamma);

/// G^{2,1}_{1,3}[rate·γ | 1; m_m, m_s, 0], the Meijer form of the CDF.
MeijerGSpec cdf_spec(const GkParams& params, double gamma);

/// G^{3,0}_{1,3}[rate·γ | 1; m_m, m_s, 0], the Meijer form of 1 - CDF.
MeijerGSpec ccdf_spec(const GkParams& params, double gamma);

/// CDF via its Meijer G form, switching to 1 - ccdf() once it passes 1/2.
/// Values within 1e-6 outside [0, 1] are clamped; anything further out
/// throws ConvergenceError.
double cdf(const GkParams& params, double gamma);

/// Upper tail 1 - CDF, from ccdf_spec().
double ccdf(const GkParams& params, double gamma);

/// One draw γ = g₁ g₂ with g₁ ~ Gamma(m_m, 1/m_m) and g₂ ~ Gamma(m_s, Ω₀/m_s).
double sample(const GkParams& params, StreamRng& rng);

}  // namespace gkfade

#pragma once

#include <complex>

namespace gkfade {

using Complex = std::complex<double>;

/// Log-gamma on the principal branch (real on the positive axis, cut along
/// the negative real axis).  Lanczos approximation (g = 7, 9 terms) for
/// Re(z) >= 1/2 and the reflection formula elsewhere; the reflection term is
/// evaluated in log form so it stays finite far up the imaginary axis.
///
/// Throws PoleError within 1e-12 of a non-positive integer.
Complex log_gamma(Complex z);

/// Regularized upper incomplete gamma Q(p, x) = Γ(p, x) / Γ(p).
double regularized_upper_gamma(double p, double x);

/// Upper incomplete gamma Γ(p, x) = ∫ₓ^∞ t^{p-1} e^{-t} dt for p > 0, x >= 0.
double upper_incomplete_gamma(double p, double x);

/// Modified Bessel function of the second kind K_ν(x), x > 0, from
/// K_ν(x) = ∫₀^∞ exp(-x cosh u) cosh(ν u) du.
double bessel_k(double nu, double x);

/// log K_ν(x); finite where K_ν(x) itself overflows (tiny x, large ν).
double log_bessel_k(double nu, double x);

}  // namespace gkfade

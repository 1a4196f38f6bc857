#include "gkfade/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gkfade/errors.hpp"

namespace gkfade {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum, valid for Re(z) >= 1/2.
Complex log_gamma_lanczos(Complex z) {
  z -= 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

// log(sin(πz)) for Im(z) >= 0, stable when Im(z) is large.  Only the value of
// exp() of the result matters to callers, so the branch is not normalized.
Complex log_sin_pi_upper(Complex z) {
  // Reduce the real part modulo 2; sin(π z) is 2-periodic.
  const double re = z.real() - 2.0 * std::round(z.real() / 2.0);
  z = Complex(re, z.imag());
  if (z.imag() < 8.0) {
    return std::log(std::sin(kPi * z));
  }
  // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz}) and |e^{2iπz}| = e^{-2π Im z}.
  const Complex i_unit(0.0, 1.0);
  const Complex w = std::exp(2.0 * i_unit * kPi * z);
  return -i_unit * kPi * z + Complex(std::log(0.5), kPi / 2.0) +
         std::log(1.0 - w);
}

void check_pole(Complex z) {
  if (z.real() > 0.5) {
    return;
  }
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
    throw PoleError("log_gamma: argument " + std::to_string(z.real()) + " + " +
                    std::to_string(z.imag()) +
                    "i is at a pole of the gamma function");
  }
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  check_pole(z);
  if (z.real() >= 0.5) {
    return log_gamma_lanczos(z);
  }
  // Reflection: Γ(z) Γ(1-z) = π / sin(πz).  Conjugate symmetry lets the log-sin
  // helper work in the upper half plane only.
  const bool lower = z.imag() < 0.0;
  const Complex zu = lower ? std::conj(z) : z;
  const Complex result =
      std::log(kPi) - log_sin_pi_upper(zu) - log_gamma_lanczos(1.0 - zu);
  return lower ? std::conj(result) : result;
}

double regularized_upper_gamma(double p, double x) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("incomplete gamma: p must be positive, got " +
                      std::to_string(p));
  }
  if (!(x >= 0.0)) {
    throw DomainError("incomplete gamma: x must be non-negative, got " +
                      std::to_string(x));
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iter = 10000;
  const double log_prefactor = -x + p * std::log(x) - std::lgamma(p);

  if (x < p + 1.0) {
    // Series for the lower function P(p, x).
    double ap = p;
    double term = 1.0 / p;
    double sum = term;
    for (int n = 0; n < max_iter; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) {
        return 1.0 - sum * std::exp(log_prefactor);
      }
    }
    throw ConvergenceError("incomplete gamma: series did not converge");
  }

  // Modified Lentz continued fraction for Q(p, x).
  constexpr double tiny = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - p;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - p);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) {
      return std::exp(log_prefactor) * h;
    }
  }
  throw ConvergenceError("incomplete gamma: continued fraction did not converge");
}

double upper_incomplete_gamma(double p, double x) {
  const double q = regularized_upper_gamma(p, x);
  return q * std::tgamma(p);
}

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_k: x must be positive and finite, got " +
                      std::to_string(x));
  }
  if (!std::isfinite(nu)) {
    throw DomainError("bessel_k: order must be finite");
  }
  nu = std::abs(nu);
  // e^{x} K_ν(x) = ∫ exp(ν u - 2x sinh²(u/2)) (1 + e^{-2νu})/2 du.  The
  // exponent peaks at sinh u = ν/x; subtracting its maximum keeps the
  // integrand O(1) even when K_ν(x) itself would overflow.
  auto exponent = [nu, x](double u) {
    const double sh = std::sinh(0.5 * u);
    return nu * u - 2.0 * x * sh * sh;
  };
  const double peak_u = std::asinh(nu / x);
  const double peak = exponent(peak_u);
  auto integrand = [&](double u) {
    return std::exp(exponent(u) - peak) * 0.5 * (1.0 + std::exp(-2.0 * nu * u));
  };
  // Beyond `knee` the double-exponential decay has set in.  For large x the
  // peak is only ~1/sqrt(x) wide, so the tail variable is scaled to match.
  const double width = std::min(1.0, 1.0 / std::sqrt(x));
  const double knee = std::asinh(std::max(nu, 1.0) / x) + width;

  constexpr double tol = 1e-14;
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> tail;
  double err_head = 0.0;
  double err_tail = 0.0;
  // Both pieces are integrated in units of `width`.
  auto scaled = [&](double t) { return integrand(width * t); };
  const double head = finite.integrate(scaled, 0.0, knee / width, tol, &err_head);
  const double rest = tail.integrate([&](double t) { return scaled(knee / width + t); }, 0.0,
                                     std::numeric_limits<double>::infinity(), tol, &err_tail);
  const double total = head + rest;
  if (!std::isfinite(total) || !(total > 0.0) || err_head + err_tail > 1e-11 * total) {
    throw ConvergenceError("bessel_k: quadrature did not converge for nu=" +
                           std::to_string(nu) + ", x=" + std::to_string(x));
  }
  return peak + std::log(width * total) - x;
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

}  // namespace gkfade

#include "gkfade/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "gkfade/errors.hpp"
#include "oracle_values.hpp"

namespace gkfade {
namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(LogGamma, TrivialValues) {
  EXPECT_NEAR(log_gamma(Complex(1.0, 0.0)).real(), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(Complex(1.0, 0.0)).imag(), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(Complex(0.5, 0.0)).real(), 0.5723649429247001, 1e-14);
}

TEST(LogGamma, OnePlusIMatchesMultiprecisionOracle) {
  const Complex v = log_gamma(Complex(1.0, 1.0));
  EXPECT_NEAR(v.real(), oracle::kLogGammaOnePlusIRe, 1e-13);
  EXPECT_NEAR(v.imag(), oracle::kLogGammaOnePlusIIm, 1e-13);
}

TEST(LogGamma, MatchesTgammaOnPositiveAxis) {
  for (double x = 0.05; x < 40.0; x *= 1.37) {
    EXPECT_LT(rel_err(std::exp(log_gamma(Complex(x, 0.0)).real()), std::tgamma(x)), 1e-12)
        << "x = " << x;
  }
  // Negative non-integers go through the reflection branch.
  for (double x : {-0.5, -1.25, -3.7, -10.1}) {
    const Complex g = std::exp(log_gamma(Complex(x, 0.0)));
    EXPECT_LT(rel_err(g.real(), std::tgamma(x)), 1e-11) << "x = " << x;
  }
}

TEST(LogGamma, RecurrenceOnRandomPoints) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  int checked = 0;
  while (checked < 100) {
    const Complex z(coord(gen), coord(gen));
    if (std::abs(z) > 20.0) continue;
    const double frac = z.real() - std::round(z.real());
    if (std::abs(z.imag()) < 0.05 && std::abs(frac) < 0.05) continue;  // near a pole
    const Complex lhs = std::exp(log_gamma(z + 1.0));
    const Complex rhs = z * std::exp(log_gamma(z));
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(rhs)) << "z = " << z;
    ++checked;
  }
}

// |Γ(1/2 + iy)|² = π / cosh(πy) and |Γ(-1/2 + iy)|² = π / ((1/4 + y²) cosh(πy))
// probe both branches far up the imaginary axis, where Γ itself underflows.
TEST(LogGamma, ModulusOnVerticalLinesFarFromAxis) {
  for (double y : {0.5, 3.0, 10.0, 40.0, 120.0, 250.0}) {
    const double log_cosh = kPi * y + std::log1p(std::exp(-2.0 * kPi * y)) - std::log(2.0);
    const double want_half = 0.5 * (std::log(kPi) - log_cosh);
    const double want_neg = 0.5 * (std::log(kPi) - std::log(0.25 + y * y) - log_cosh);
    EXPECT_NEAR(log_gamma(Complex(0.5, y)).real(), want_half, 1e-11 * std::max(1.0, y));
    EXPECT_NEAR(log_gamma(Complex(-0.5, y)).real(), want_neg, 1e-11 * std::max(1.0, y));
    EXPECT_NEAR(log_gamma(Complex(-0.5, -y)).real(), want_neg, 1e-11 * std::max(1.0, y));
  }
}

TEST(LogGamma, ConjugateSymmetry) {
  for (const Complex z : {Complex(0.3, 2.0), Complex(-2.4, 7.5), Complex(5.0, -30.0)}) {
    const Complex a = log_gamma(z);
    const Complex b = log_gamma(std::conj(z));
    EXPECT_NEAR(a.real(), b.real(), 1e-12 * std::max(1.0, std::abs(a)));
    EXPECT_NEAR(a.imag(), -b.imag(), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(LogGamma, PolesRaise) {
  EXPECT_THROW(log_gamma(Complex(0.0, 0.0)), PoleError);
  EXPECT_THROW(log_gamma(Complex(-1.0, 0.0)), PoleError);
  EXPECT_THROW(log_gamma(Complex(-3.0 + 1e-13, 0.0)), PoleError);
  EXPECT_NO_THROW(log_gamma(Complex(-3.0, 1e-6)));
  EXPECT_THROW(log_gamma(Complex(std::nan(""), 0.0)), DomainError);
}

TEST(UpperIncompleteGamma, TrivialValues) {
  EXPECT_LT(rel_err(upper_incomplete_gamma(0.5, 0.0), std::sqrt(kPi)), 1e-12);
  EXPECT_LT(rel_err(upper_incomplete_gamma(1.0, 1.0), std::exp(-1.0)), 1e-12);
}

TEST(UpperIncompleteGamma, QuadratureOracle) {
  EXPECT_LT(rel_err(upper_incomplete_gamma(0.5, 2.0), oracle::kUpperGammaHalfAt2), 1e-12);
}

TEST(UpperIncompleteGamma, AtZeroEqualsCompleteGamma) {
  for (double p : {0.5, 1.0, 2.5}) {
    EXPECT_LT(rel_err(upper_incomplete_gamma(p, 0.0), std::tgamma(p)), 1e-12);
    EXPECT_LT(rel_err(upper_incomplete_gamma(p, 1e-300), std::tgamma(p)), 1e-12);
  }
}

TEST(UpperIncompleteGamma, AgreesWithBoostAcrossBothBranches) {
  for (double p : {0.3, 0.5, 1.0, 1.7, 4.0, 12.5}) {
    for (double x : {0.01, 0.4, 1.0, 2.0, p + 0.999, p + 1.001, 7.0, 30.0, 120.0}) {
      EXPECT_LT(rel_err(upper_incomplete_gamma(p, x), boost::math::tgamma(p, x)), 1e-12)
          << "p = " << p << ", x = " << x;
    }
  }
}

TEST(UpperIncompleteGamma, HalfOrderIsErfc) {
  for (double x : {0.1, 1.0, 4.0, 25.0}) {
    EXPECT_LT(rel_err(regularized_upper_gamma(0.5, x), std::erfc(std::sqrt(x))), 1e-12);
  }
}

TEST(UpperIncompleteGamma, DomainErrors) {
  EXPECT_THROW(upper_incomplete_gamma(0.0, 1.0), DomainError);
  EXPECT_THROW(upper_incomplete_gamma(-1.0, 1.0), DomainError);
  EXPECT_THROW(upper_incomplete_gamma(1.0, -0.1), DomainError);
}

TEST(BesselK, HalfOrderClosedForm) {
  EXPECT_LT(rel_err(bessel_k(0.5, 1.0), std::sqrt(kPi / 2.0) * std::exp(-1.0)), 1e-10);
  EXPECT_LT(rel_err(bessel_k(0.5, 1.0), 0.4610685044478946), 1e-10);
}

TEST(BesselK, QuadratureOracle) {
  EXPECT_LT(rel_err(bessel_k(0.0, 2.0), oracle::kBesselK0At2), 1e-10);
}

TEST(BesselK, SymmetricInOrder) {
  EXPECT_LT(rel_err(bessel_k(-1.0, 1.0), bessel_k(1.0, 1.0)), 1e-14);
  EXPECT_LT(rel_err(bessel_k(-3.5, 0.2), bessel_k(3.5, 0.2)), 1e-14);
}

TEST(BesselK, AgreesWithStandardLibrary) {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 3.0, 3.5}) {
    for (double x : {1e-3, 0.05, 0.7, 2.0, 9.0, 40.0, 300.0}) {
      EXPECT_LT(rel_err(bessel_k(nu, x), std::cyl_bessel_k(nu, x)), 1e-10)
          << "nu = " << nu << ", x = " << x;
    }
  }
}

TEST(BesselK, TinyArguments) {
  for (double nu : {0.0, 0.5, 2.0}) {
    for (double x : {1e-8, 1e-30, 1e-120}) {
      const double want = std::log(boost::math::cyl_bessel_k(nu, x));
      EXPECT_NEAR(log_bessel_k(nu, x), want, 1e-12 * std::abs(want)) << "nu = " << nu << ", x = " << x;
    }
  }
  // K_ν(x) ~ Γ(ν)/2 (2/x)^ν overflows here, its log does not.
  const double x = 1e-200;
  const double want = std::lgamma(7.0) - std::log(2.0) + 7.0 * std::log(2.0 / x);
  EXPECT_NEAR(log_bessel_k(7.0, x), want, 1e-12 * want);
}

TEST(BesselK, DecreasingInArgument) {
  for (double nu : {0.0, 0.5, 2.0}) {
    double prev = bessel_k(nu, 0.01);
    for (double x = 0.02; x < 50.0; x *= 1.3) {
      const double cur = bessel_k(nu, x);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(BesselK, DomainErrors) {
  EXPECT_THROW(bessel_k(0.0, 0.0), DomainError);
  EXPECT_THROW(bessel_k(1.0, -2.0), DomainError);
}

}  // namespace
}  // namespace gkfade

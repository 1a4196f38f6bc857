#include "gkfade/line_quadrature.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gkfade/errors.hpp"

namespace gkfade {
namespace {

TEST(GaussLegendre, ExactForDegree63) {
  const auto& gl = gauss_legendre_32();
  ASSERT_EQ(gl.nodes.size(), 32u);
  double w_sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    w_sum += gl.weights[i];
    moment += gl.weights[i] * std::pow(gl.nodes[i], 62);
  }
  EXPECT_NEAR(w_sum, 2.0, 1e-14);
  EXPECT_NEAR(moment, 2.0 / 63.0, 1e-14);
}

TEST(IntegrateLine, GaussianMass) {
  LineOptions opt;
  const LineIntegral r =
      integrate_line([](double u) { return Complex(std::exp(-u * u), 0.0); }, opt);
  EXPECT_NEAR(r.value.real(), std::sqrt(std::numbers::pi), 1e-13);
  EXPECT_EQ(r.value.imag(), 0.0);
  // Marching stops long before the default W.
  EXPECT_LT(r.rule.extent(), 10.0);
}

TEST(IntegrateLine, ConjugateSymmetricIntegrandHasZeroImaginaryPart) {
  LineOptions opt;
  auto f = [](double u) { return std::exp(Complex(-0.5 * u * u, 3.0 * u)); };
  const LineIntegral r = integrate_line(f, opt);
  const double want = std::sqrt(2.0 * std::numbers::pi) * std::exp(-4.5);
  EXPECT_NEAR(r.value.real(), want, 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-17);
}

TEST(IntegrateLine, RuleReproducesValueAfterBisection) {
  LineOptions opt;
  auto f = [](double u) { return Complex(1.0 / std::cosh(4.0 * u), 0.0); };
  const LineIntegral r = integrate_line(f, opt);
  EXPECT_NEAR(r.value.real(), std::numbers::pi / 4.0, 1e-12);
  const Complex again = apply_rule(r.rule.bisected(), f);
  EXPECT_NEAR(again.real(), r.value.real(), 1e-14 * r.value.real());
}

TEST(IntegrateLine, SlowTailExtendsHalfWidth) {
  LineOptions opt;
  opt.half_width = 50.0;
  auto f = [](double u) { return Complex(std::exp(-std::abs(u) / 20.0), 0.0); };
  const LineIntegral r = integrate_line(f, opt);
  EXPECT_GT(r.half_width, 50.0);
  EXPECT_NEAR(r.value.real(), 40.0, 1e-7);
}

TEST(IntegrateLine, ExtensionBudgetExhausted) {
  LineOptions opt;
  opt.max_extensions = 0;
  auto f = [](double u) { return Complex(std::exp(-std::abs(u) / 20.0), 0.0); };
  EXPECT_THROW(integrate_line(f, opt), ConvergenceError);
}

TEST(IntegrateLine, NonFiniteIntegrand) {
  LineOptions opt;
  auto f = [](double u) { return Complex(u > 3.0 ? std::nan("") : 1.0, 0.0); };
  EXPECT_THROW(integrate_line(f, opt), ConvergenceError);
}

TEST(IntegrateLine, BadOptions) {
  LineOptions opt;
  opt.rel_tol = 0.0;
  EXPECT_THROW(integrate_line([](double) { return Complex(1.0); }, opt), DomainError);
}

}  // namespace
}  // namespace gkfade

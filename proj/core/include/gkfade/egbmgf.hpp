#pragma once

#include <utility>
#include <vector>

#include "gkfade/mellin_barnes.hpp"

namespace gkfade {

/// Gamma block of one integration variable s:
///   Π Γ(1 - c_num + s) Π Γ(d_num - s) / (Π Γ(c_den - s) Π Γ(1 - d_den + s)).
/// Orders: m = |c_num|, n = |d_num|, p = m + |c_den|, q = n + |d_den|.
struct VariableBlock {
  std::vector<double> c_num;
  std::vector<double> c_den;
  std::vector<double> d_num;
  std::vector<double> d_den;
};

/// Extended generalized bivariate Meijer G-function
///
///   S(x, y) = 1/(2πi)² ∫∫ Π Γ(a + s + t) / (Π Γ(1 - a' - s - t) Π Γ(b + s + t))
///             × block_x(s) block_y(t) x^s y^t ds dt
///
/// with a = joint_num, a' = joint_den_upper, b = joint_den_lower.
struct EgbmgfSpec {
  std::vector<double> joint_num;
  std::vector<double> joint_den_upper;
  std::vector<double> joint_den_lower;
  VariableBlock x_block;
  VariableBlock y_block;
  double x = 1.0;
  double y = 1.0;
};

/// Block orders in the (m₁,0:n₂,m₂:n₃,m₃ ; p₁,q₁:p₂,q₂:p₃,q₃) bookkeeping.
struct EgbmgfOrders {
  std::size_t p1, q1, p2, q2, p3, q3;
};
EgbmgfOrders orders_of(const EgbmgfSpec& spec);

/// Throws DomainError unless p₁+p₂ <= q₁+q₂, p₁+p₃ <= q₁+q₃, q₂ >= 1,
/// q₃ >= 1, x > 0, y > 0 and every parameter is finite.  Returns true when
/// either order condition holds with equality.
bool validate(const EgbmgfSpec& spec);

/// The one-variable Meijer G-function described by a block.
MeijerGSpec as_meijer(const VariableBlock& block, double z);

struct EgbmgfContours {
  ContourConfig s;
  ContourConfig t;
  /// Set when the per-block midpoints had to move right so that the joint
  /// numerator gammas Γ(a + s + t) stay pole free.
  bool adjusted = false;
};

/// Default contours: the single-variable rule for each block, then the
/// joint constraint Re(a + s + t) > 0 enforced by moving both abscissae
/// toward their right pole in the same proportion.  rel_tol defaults to 1e-8.
EgbmgfContours contours_for(const EgbmgfSpec& spec);

struct EgbmgfResult {
  double value = 0.0;
  double imag_residual = 0.0;
  /// An order condition holds with equality (weak convergence).
  bool boundary_convergence = false;
  bool contour_adjusted = false;
  double abscissa_s = 0.0;
  double abscissa_t = 0.0;
  /// Im-range actually covered in each variable.
  double extent_s = 0.0;
  double extent_t = 0.0;
  std::size_t nodes_s = 0;
  std::size_t nodes_t = 0;
};

/// Double Mellin–Barnes integral on the vertical lines of cfg_s and cfg_t.
///
/// Each variable gets a composite Gauss–Legendre rule built adaptively on the
/// integrand restricted to Im of the other variable = 0; the tensor product
/// of the two rules is then refined (every panel bisected) until successive
/// values agree to rel_tol, and the covered Im range grows while the
/// outermost panels still contribute.
EgbmgfResult evaluate_egbmgf(const EgbmgfSpec& spec, const ContourConfig& cfg_s,
                             const ContourConfig& cfg_t);

/// evaluate_egbmgf on the default contours, with the `adjusted` flag copied.
EgbmgfResult evaluate_egbmgf(const EgbmgfSpec& spec);

/// Real value; throws ResidualImagError when the imaginary residue is too large.
double eval_egbmgf(const EgbmgfSpec& spec, const ContourConfig& cfg_s,
                   const ContourConfig& cfg_t);
double eval_egbmgf(const EgbmgfSpec& spec);

/// Right-hand side of the Laplace-type integral
///
///   ∫₀^∞ u^{λ-1} e^{-μu} S(x u^ρ, y u^ρ) du
///     = (2π)^{(1-ρ)/2} ρ^{λ-1/2} μ^{-λ} S'(x ρ^ρ/μ^ρ, y ρ^ρ/μ^ρ)
///
/// where S' prepends λ/ρ, (λ+1)/ρ, ..., (λ+ρ-1)/ρ to joint_num.
struct LaplaceImage {
  EgbmgfSpec spec;
  double prefactor = 1.0;
};
LaplaceImage laplace_image(const EgbmgfSpec& spec, double lambda, double mu, int rho = 1);

/// prefactor · S' evaluated on its default contours.
double laplace_of_egbmgf(const EgbmgfSpec& spec, double lambda, double mu, int rho = 1);

}  // namespace gkfade

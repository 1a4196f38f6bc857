#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gkfade/special_fn.hpp"

namespace gkfade {

/// Fixed Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss–Legendre rule with `n` nodes, computed by Newton iteration on P_n.
GaussLegendreRule make_gauss_legendre(int n);

/// The 32-node rule used for every contour panel.
const GaussLegendreRule& gauss_legendre_32();

/// Composite Gauss–Legendre rule for the imaginary coordinate u of a vertical
/// contour s = c + iu.  Panels are stored for u >= 0 only; the rule is mirrored
/// onto u <= 0, which is exact for integrands with f(-u) = conj(f(u)).
class LineRule {
 public:
  LineRule() = default;
  explicit LineRule(std::vector<std::pair<double, double>> right_panels);

  /// Every panel split at its midpoint.
  LineRule bisected() const;

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  const std::vector<std::pair<double, double>>& right_panels() const {
    return panels_;
  }
  /// Upper end of the outermost panel.
  double extent() const { return panels_.empty() ? 0.0 : panels_.back().second; }
  /// True when node i lies in the outermost panel on either side.
  bool is_boundary_node(std::size_t i) const;

 private:
  std::vector<std::pair<double, double>> panels_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct LineOptions {
  /// Initial truncation half-width W of the u range.
  double half_width = 50.0;
  double rel_tol = 1e-10;
  /// Upper bound on accepted panels (per side).
  int max_panels = 4096;
  /// Width of the marching panels before adaptive bisection.
  double panel_width = 1.0;
  /// Never stop marching before |u| reaches this value.
  double min_extent = 0.0;
  /// How many times W may grow by 1.5x when the tail is still significant.
  int max_extensions = 8;
};

struct LineIntegral {
  /// ∫ f(u) du over the truncated range, using the bisected rule.
  Complex value;
  /// ∫ |f(u)| du (same rule); sets the round-off floor.
  double l1 = 0.0;
  /// Final truncation half-width after any extension.
  double half_width = 0.0;
  /// Accepted (coarse) panels; `rule.bisected()` reproduces `value`.
  LineRule rule;
};

using LineIntegrand = std::function<Complex(double)>;

/// Adaptive integral of f(u) over [-W, W] for a conjugate-symmetric integrand.
///
/// Unit panels are marched outward from u = 0.  Each panel is accepted once
/// its 32-point estimate and the sum over its two halves agree to within
/// rel_tol of the running total (plus a round-off floor proportional to the
/// running L1 norm); otherwise it is bisected.  Marching stops early once two
/// consecutive panels are negligible, and W grows by 1.5x while the panel at
/// |u| = W still carries weight.  Throws ConvergenceError when the panel
/// budget or extension budget is exhausted, or when f is not finite.
LineIntegral integrate_line(const LineIntegrand& f, const LineOptions& options);

/// Applies a rule (both mirrored halves) to f.
Complex apply_rule(const LineRule& rule, const LineIntegrand& f, double* l1 = nullptr);

}  // namespace gkfade

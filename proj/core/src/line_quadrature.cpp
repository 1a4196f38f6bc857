#include "gkfade/line_quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gkfade/errors.hpp"

namespace gkfade {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDepth = 40;

struct PanelSum {
  Complex value;
  double l1 = 0.0;
};

Complex checked(Complex v, double u) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ConvergenceError("contour integrand is not finite at u = " +
                           std::to_string(u));
  }
  return v;
}

// Panel [a, b] plus its mirror [-b, -a].
PanelSum panel_pair(const LineIntegrand& f, double a, double b) {
  const auto& gl = gauss_legendre_32();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelSum out;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double u = mid + half * gl.nodes[i];
    const Complex right = checked(f(u), u);
    const Complex left = checked(f(-u), -u);
    out.value += half * gl.weights[i] * (right + left);
    out.l1 += half * gl.weights[i] * (std::abs(right) + std::abs(left));
  }
  return out;
}

}  // namespace

GaussLegendreRule make_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

const GaussLegendreRule& gauss_legendre_32() {
  static const GaussLegendreRule rule = make_gauss_legendre(32);
  return rule;
}

LineRule::LineRule(std::vector<std::pair<double, double>> right_panels)
    : panels_(std::move(right_panels)) {
  const auto& gl = gauss_legendre_32();
  const std::size_t per_side = panels_.size() * gl.nodes.size();
  nodes_.reserve(2 * per_side);
  weights_.reserve(2 * per_side);
  for (int sign : {1, -1}) {
    for (const auto& [a, b] : panels_) {
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        nodes_.push_back(sign * (mid + half * gl.nodes[i]));
        weights_.push_back(half * gl.weights[i]);
      }
    }
  }
}

LineRule LineRule::bisected() const {
  std::vector<std::pair<double, double>> finer;
  finer.reserve(2 * panels_.size());
  for (const auto& [a, b] : panels_) {
    const double mid = 0.5 * (a + b);
    finer.emplace_back(a, mid);
    finer.emplace_back(mid, b);
  }
  return LineRule(std::move(finer));
}

bool LineRule::is_boundary_node(std::size_t i) const {
  if (panels_.empty()) return false;
  const std::size_t per_panel = gauss_legendre_32().nodes.size();
  const std::size_t per_side = panels_.size() * per_panel;
  const std::size_t k = i % per_side;
  return k / per_panel == panels_.size() - 1;
}

Complex apply_rule(const LineRule& rule, const LineIntegrand& f, double* l1) {
  Complex total;
  double abs_total = 0.0;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Complex v = checked(f(nodes[i]), nodes[i]);
    total += weights[i] * v;
    abs_total += weights[i] * std::abs(v);
  }
  if (l1 != nullptr) *l1 = abs_total;
  return total;
}

LineIntegral integrate_line(const LineIntegrand& f, const LineOptions& options) {
  if (!(options.half_width > 0.0) || !(options.panel_width > 0.0)) {
    throw DomainError("integrate_line: half width and panel width must be positive");
  }
  if (!(options.rel_tol > 0.0)) {
    throw DomainError("integrate_line: rel_tol must be positive");
  }

  LineIntegral result;
  double width = std::max(options.half_width, options.min_extent);
  int extensions = 0;
  int quiet = 0;
  std::vector<std::pair<double, double>> accepted;

  auto tolerance = [&](const PanelSum& extra) {
    const double scale = std::max(std::abs(result.value), std::abs(extra.value));
    return options.rel_tol * scale + 64.0 * kEps * (result.l1 + extra.l1);
  };

  // Adaptive refinement of one marching panel; accepted sub-panels are
  // appended in left-to-right order.
  auto refine = [&](auto&& self, double a, double b, const PanelSum& whole,
                    int depth) -> PanelSum {
    const double mid = 0.5 * (a + b);
    const PanelSum left = panel_pair(f, a, mid);
    const PanelSum right = panel_pair(f, mid, b);
    PanelSum halves{left.value + right.value, left.l1 + right.l1};
    if (std::abs(whole.value - halves.value) <= tolerance(halves)) {
      accepted.emplace_back(a, b);
      return halves;
    }
    if (depth >= kMaxDepth ||
        static_cast<int>(accepted.size()) >= options.max_panels) {
      throw ConvergenceError("contour quadrature: panel budget exhausted near u = " +
                             std::to_string(a));
    }
    const PanelSum l = self(self, a, mid, left, depth + 1);
    const PanelSum r = self(self, mid, b, right, depth + 1);
    return PanelSum{l.value + r.value, l.l1 + r.l1};
  };

  double pos = 0.0;
  while (true) {
    const double next = std::min(pos + options.panel_width, width);
    const PanelSum coarse = panel_pair(f, pos, next);
    const PanelSum panel = refine(refine, pos, next, coarse, 0);
    result.value += panel.value;
    result.l1 += panel.l1;
    pos = next;

    const double scale =
        std::max(std::abs(result.value), 64.0 * kEps * result.l1);
    const bool negligible = panel.l1 <= 1e-3 * options.rel_tol * scale;
    quiet = (negligible && pos >= options.min_extent) ? quiet + 1 : 0;
    if (quiet >= 2) break;

    if (pos >= width) {
      if (panel.l1 <= options.rel_tol * scale && pos >= options.min_extent) break;
      if (++extensions > options.max_extensions) {
        throw ConvergenceError(
            "contour quadrature: tail still significant at |Im| = " +
            std::to_string(width));
      }
      width *= 1.5;
    }
  }

  result.half_width = width;
  result.rule = LineRule(std::move(accepted));
  return result;
}

}  // namespace gkfade

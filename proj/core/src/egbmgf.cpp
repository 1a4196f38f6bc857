#include "gkfade/egbmgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gkfade/errors.hpp"
#include "gkfade/line_quadrature.hpp"

namespace gkfade {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDefaultRelTol = 1e-8;
constexpr int kMaxRefinements = 5;
constexpr int kMaxExtensions = 4;
constexpr double kMaxTensorNodes = 6.4e7;

void require_finite(const std::vector<double>& values, const char* name) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError(std::string("EGBMGF: non-finite parameter in ") + name);
    }
  }
}

void require_finite(const VariableBlock& block, const char* name) {
  require_finite(block.c_num, name);
  require_finite(block.c_den, name);
  require_finite(block.d_num, name);
  require_finite(block.d_den, name);
}

Complex log_block(const VariableBlock& block, double log_z, Complex s) {
  Complex acc = s * log_z;
  for (double c : block.c_num) acc += log_gamma(1.0 - c + s);
  for (double d : block.d_num) acc += log_gamma(d - s);
  for (double c : block.c_den) acc -= log_gamma(c - s);
  for (double d : block.d_den) acc -= log_gamma(1.0 - d + s);
  return acc;
}

Complex log_joint(const EgbmgfSpec& spec, Complex w) {
  Complex acc;
  for (double a : spec.joint_num) acc += log_gamma(a + w);
  for (double a : spec.joint_den_upper) acc -= log_gamma(1.0 - a - w);
  for (double b : spec.joint_den_lower) acc -= log_gamma(b + w);
  return acc;
}

struct TensorSum {
  Complex value;
  double l1 = 0.0;
  double boundary_l1 = 0.0;
};

}  // namespace

EgbmgfOrders orders_of(const EgbmgfSpec& spec) {
  return EgbmgfOrders{
      spec.joint_num.size() + spec.joint_den_upper.size(),
      spec.joint_den_lower.size(),
      spec.x_block.c_num.size() + spec.x_block.c_den.size(),
      spec.x_block.d_num.size() + spec.x_block.d_den.size(),
      spec.y_block.c_num.size() + spec.y_block.c_den.size(),
      spec.y_block.d_num.size() + spec.y_block.d_den.size(),
  };
}

bool validate(const EgbmgfSpec& spec) {
  require_finite(spec.joint_num, "joint_num");
  require_finite(spec.joint_den_upper, "joint_den_upper");
  require_finite(spec.joint_den_lower, "joint_den_lower");
  require_finite(spec.x_block, "x_block");
  require_finite(spec.y_block, "y_block");
  if (!(spec.x > 0.0) || !(spec.y > 0.0) || !std::isfinite(spec.x) ||
      !std::isfinite(spec.y)) {
    throw DomainError("EGBMGF: arguments x and y must be positive and finite");
  }
  const EgbmgfOrders o = orders_of(spec);
  if (o.q2 < 1 || o.q3 < 1) {
    throw DomainError("EGBMGF: each variable block needs at least one lower parameter");
  }
  if (o.p1 + o.p2 > o.q1 + o.q2 || o.p1 + o.p3 > o.q1 + o.q3) {
    throw DomainError("EGBMGF: convergence conditions p1+p2 <= q1+q2 and "
                      "p1+p3 <= q1+q3 are violated");
  }
  return o.p1 + o.p2 == o.q1 + o.q2 || o.p1 + o.p3 == o.q1 + o.q3;
}

MeijerGSpec as_meijer(const VariableBlock& block, double z) {
  return MeijerGSpec{block.c_num, block.c_den, block.d_num, block.d_den, z};
}

EgbmgfContours contours_for(const EgbmgfSpec& spec) {
  const PoleFreeStrip strip_s = pole_free_strip(spec.x_block.c_num, spec.x_block.d_num);
  const PoleFreeStrip strip_t = pole_free_strip(spec.y_block.c_num, spec.y_block.d_num);
  EgbmgfContours out;
  out.s = contour_for(as_meijer(spec.x_block, spec.x));
  out.t = contour_for(as_meijer(spec.y_block, spec.y));
  out.s.rel_tol = kDefaultRelTol;
  out.t.rel_tol = kDefaultRelTol;
  if (spec.joint_num.empty()) {
    return out;
  }
  const double a_min = *std::min_element(spec.joint_num.begin(), spec.joint_num.end());
  const double sum = out.s.abscissa + out.t.abscissa;
  if (sum + a_min > 0.0) {
    return out;
  }
  const double right_sum = strip_s.right + strip_t.right;
  if (-a_min >= right_sum) {
    throw NoStripError("EGBMGF: joint gamma poles leave no room for the contours");
  }
  // Move both lines toward their right poles by the same fraction so that the
  // joint poles sit halfway between -a_min and the right boundary.
  const double target = 0.5 * (-a_min + right_sum);
  const double frac = (target - sum) / (right_sum - sum);
  out.s.abscissa += frac * (strip_s.right - out.s.abscissa);
  out.t.abscissa += frac * (strip_t.right - out.t.abscissa);
  out.adjusted = true;
  return out;
}

EgbmgfResult evaluate_egbmgf(const EgbmgfSpec& spec, const ContourConfig& cfg_s,
                             const ContourConfig& cfg_t) {
  EgbmgfResult result;
  result.boundary_convergence = validate(spec);
  validate_contour(cfg_s);
  validate_contour(cfg_t);

  const double cs = cfg_s.abscissa;
  const double ct = cfg_t.abscissa;
  if (!pole_free_strip(spec.x_block.c_num, spec.x_block.d_num).contains(cs) ||
      !pole_free_strip(spec.y_block.c_num, spec.y_block.d_num).contains(ct)) {
    throw NoStripError("EGBMGF: contour abscissa outside its pole-free strip");
  }
  if (!spec.joint_num.empty()) {
    const double a_min =
        *std::min_element(spec.joint_num.begin(), spec.joint_num.end());
    if (!(cs + ct + a_min > 0.0)) {
      throw NoStripError("EGBMGF: contours cross the poles of the joint gammas");
    }
  }
  result.abscissa_s = cs;
  result.abscissa_t = ct;

  const double log_x = std::log(spec.x);
  const double log_y = std::log(spec.y);
  const double rel_tol = std::min(cfg_s.rel_tol, cfg_t.rel_tol);

  // One-dimensional proxies: each variable's integrand with the other pinned
  // to its real-axis crossing.  They only decide panel placement.
  const Complex ls0 = log_block(spec.x_block, log_x, Complex(cs, 0.0));
  const Complex lt0 = log_block(spec.y_block, log_y, Complex(ct, 0.0));
  const LineIntegrand proxy_s = [&](double u) {
    return std::exp(log_block(spec.x_block, log_x, Complex(cs, u)) + lt0 +
                    log_joint(spec, Complex(cs + ct, u)));
  };
  const LineIntegrand proxy_t = [&](double v) {
    return std::exp(log_block(spec.y_block, log_y, Complex(ct, v)) + ls0 +
                    log_joint(spec, Complex(cs + ct, v)));
  };

  auto tensor = [&](const LineRule& rs, const LineRule& rt) {
    const auto us = rs.nodes();
    const auto vs = rt.nodes();
    if (static_cast<double>(us.size()) * static_cast<double>(vs.size()) >
        kMaxTensorNodes) {
      throw ConvergenceError("EGBMGF: tensor quadrature exceeds the node budget");
    }
    std::vector<Complex> log_s(us.size());
    std::vector<Complex> log_t(vs.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
      log_s[i] = log_block(spec.x_block, log_x, Complex(cs, us[i])) +
                 std::log(rs.weights()[i]);
    }
    for (std::size_t j = 0; j < vs.size(); ++j) {
      log_t[j] = log_block(spec.y_block, log_y, Complex(ct, vs[j])) +
                 std::log(rt.weights()[j]);
    }
    TensorSum out;
    for (std::size_t i = 0; i < us.size(); ++i) {
      const bool edge_i = rs.is_boundary_node(i);
      Complex row;
      double row_l1 = 0.0;
      double row_edge = 0.0;
      for (std::size_t j = 0; j < vs.size(); ++j) {
        const Complex term =
            std::exp(log_s[i] + log_t[j] + log_joint(spec, Complex(cs + ct, us[i] + vs[j])));
        const double mag = std::abs(term);
        row += term;
        row_l1 += mag;
        if (edge_i || rt.is_boundary_node(j)) row_edge += mag;
      }
      out.value += row;
      out.l1 += row_l1;
      out.boundary_l1 += row_edge;
    }
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
      throw ConvergenceError("EGBMGF: integrand overflowed on the contour");
    }
    return out;
  };

  double min_extent_s = 0.0;
  double min_extent_t = 0.0;
  for (int extension = 0; extension <= kMaxExtensions; ++extension) {
    LineOptions opt_s;
    opt_s.half_width = cfg_s.half_width;
    opt_s.rel_tol = rel_tol;
    opt_s.max_panels = cfg_s.max_panels;
    opt_s.min_extent = min_extent_s;
    LineOptions opt_t = opt_s;
    opt_t.half_width = cfg_t.half_width;
    opt_t.max_panels = cfg_t.max_panels;
    opt_t.min_extent = min_extent_t;

    LineRule rule_s = integrate_line(proxy_s, opt_s).rule;
    LineRule rule_t = integrate_line(proxy_t, opt_t).rule;
    TensorSum current = tensor(rule_s, rule_t);
    bool converged = false;
    for (int level = 0; level < kMaxRefinements && !converged; ++level) {
      rule_s = rule_s.bisected();
      rule_t = rule_t.bisected();
      const TensorSum finer = tensor(rule_s, rule_t);
      converged = std::abs(finer.value - current.value) <=
                  rel_tol * std::abs(finer.value) + 64.0 * kEps * finer.l1;
      current = finer;
    }
    if (!converged) {
      throw ConvergenceError("EGBMGF: tensor refinement did not reach rel_tol");
    }

    const double scale = std::max(std::abs(current.value), 64.0 * kEps * current.l1);
    if (current.boundary_l1 <= rel_tol * scale) {
      const double norm = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
      result.value = current.value.real() * norm;
      result.imag_residual = current.value.imag() * norm;
      result.extent_s = rule_s.extent();
      result.extent_t = rule_t.extent();
      result.nodes_s = rule_s.nodes().size();
      result.nodes_t = rule_t.nodes().size();
      return result;
    }
    min_extent_s = 1.5 * rule_s.extent();
    min_extent_t = 1.5 * rule_t.extent();
  }
  throw ConvergenceError("EGBMGF: truncated tails remain significant");
}

EgbmgfResult evaluate_egbmgf(const EgbmgfSpec& spec) {
  const EgbmgfContours contours = contours_for(spec);
  EgbmgfResult result = evaluate_egbmgf(spec, contours.s, contours.t);
  result.contour_adjusted = contours.adjusted;
  return result;
}

double eval_egbmgf(const EgbmgfSpec& spec, const ContourConfig& cfg_s,
                   const ContourConfig& cfg_t) {
  const EgbmgfResult r = evaluate_egbmgf(spec, cfg_s, cfg_t);
  check_imag_residual(r.value, r.imag_residual, "EGBMGF");
  return r.value;
}

double eval_egbmgf(const EgbmgfSpec& spec) {
  const EgbmgfResult r = evaluate_egbmgf(spec);
  check_imag_residual(r.value, r.imag_residual, "EGBMGF");
  return r.value;
}

LaplaceImage laplace_image(const EgbmgfSpec& spec, double lambda, double mu, int rho) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw DomainError("Laplace image: lambda and mu must be positive and finite");
  }
  if (rho < 1) {
    throw DomainError("Laplace image: rho must be a positive integer");
  }
  LaplaceImage image;
  image.spec = spec;
  std::vector<double> shifted;
  shifted.reserve(spec.joint_num.size() + static_cast<std::size_t>(rho));
  for (int k = 0; k < rho; ++k) {
    shifted.push_back((lambda + k) / rho);
  }
  shifted.insert(shifted.end(), spec.joint_num.begin(), spec.joint_num.end());
  image.spec.joint_num = std::move(shifted);

  const double r = static_cast<double>(rho);
  const double scale = std::pow(r / mu, r);
  image.spec.x = spec.x * scale;
  image.spec.y = spec.y * scale;
  image.prefactor = std::pow(2.0 * std::numbers::pi, 0.5 * (1.0 - r)) *
                    std::pow(r, lambda - 0.5) / std::pow(mu, lambda);
  return image;
}

double laplace_of_egbmgf(const EgbmgfSpec& spec, double lambda, double mu, int rho) {
  const LaplaceImage image = laplace_image(spec, lambda, mu, rho);
  return image.prefactor * eval_egbmgf(image.spec);
}

}  // namespace gkfade

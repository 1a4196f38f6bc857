#include "gkfade/mellin_barnes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "gkfade/errors.hpp"
#include "gkfade/line_quadrature.hpp"

namespace gkfade {
namespace {

void require_finite(const std::vector<double>& values, const char* name) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError(std::string("Meijer G: non-finite parameter in ") + name);
    }
  }
}

void validate_spec(const MeijerGSpec& spec) {
  require_finite(spec.a_num, "a_num");
  require_finite(spec.a_den, "a_den");
  require_finite(spec.b_num, "b_num");
  require_finite(spec.b_den, "b_den");
  if (!(spec.z > 0.0) || !std::isfinite(spec.z)) {
    throw DomainError("Meijer G: argument must be positive and finite, got " +
                      std::to_string(spec.z));
  }
  if (spec.b_num.empty() && spec.b_den.empty()) {
    throw DomainError("Meijer G: q >= 1 is required");
  }
}

}  // namespace

void validate_contour(const ContourConfig& cfg) {
  if (!std::isfinite(cfg.abscissa)) {
    throw DomainError("contour: abscissa must be finite");
  }
  if (!(cfg.half_width > 0.0)) {
    throw DomainError("contour: half_width must be positive");
  }
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-4)) {
    throw DomainError("contour: rel_tol must lie in (0, 1e-4], got " +
                      std::to_string(cfg.rel_tol));
  }
  if (cfg.max_panels < 1) {
    throw DomainError("contour: max_panels must be at least 1");
  }
}

PoleFreeStrip pole_free_strip(const std::vector<double>& a_num,
                              const std::vector<double>& b_num) {
  if (b_num.empty()) {
    throw NoStripError("no right poles: a vertical contour cannot be placed");
  }
  PoleFreeStrip strip{-std::numeric_limits<double>::infinity(),
                      *std::min_element(b_num.begin(), b_num.end())};
  if (!a_num.empty()) {
    strip.left = *std::max_element(a_num.begin(), a_num.end()) - 1.0;
  }
  if (!(strip.left < strip.right)) {
    throw NoStripError("left and right pole families overlap (left " +
                       std::to_string(strip.left) + ", right " +
                       std::to_string(strip.right) + ")");
  }
  return strip;
}

ContourConfig contour_for(const MeijerGSpec& spec) {
  const PoleFreeStrip strip = pole_free_strip(spec.a_num, spec.b_num);
  ContourConfig cfg;
  if (std::isfinite(strip.left)) {
    cfg.abscissa = 0.5 * (strip.left + strip.right);
    return cfg;
  }
  cfg.abscissa = strip.right - 0.5;
  if (!(spec.z > 0.0) || !std::isfinite(spec.z)) return cfg;

  // For large z the integrand on the real axis has its minimum far left of
  // the first pole; a line through it avoids computing a small G as the
  // difference of large contributions.  The search stays where every
  // denominator gamma has a positive argument, so the integrand has no zeros
  // on the real axis there.
  const double hi = cfg.abscissa;
  double floor = -1e6;
  for (double b : spec.b_den) floor = std::max(floor, b - 1.0 + 0.5);
  for (double a : spec.a_den) {
    if (!(a - hi > 0.0)) return cfg;
  }
  if (!(floor < hi)) return cfg;

  auto height = [&spec](double c) {
    double acc = c * std::log(spec.z);
    for (double b : spec.b_num) acc += std::lgamma(b - c);
    for (double b : spec.b_den) acc -= std::lgamma(1.0 - b + c);
    for (double a : spec.a_den) acc -= std::lgamma(a - c);
    return acc;
  };
  auto falls_leftward = [&height](double c) { return height(c - 1e-3) < height(c); };
  if (!falls_leftward(hi)) return cfg;
  double lo = hi - 1.0;
  while (lo > floor && falls_leftward(lo)) lo = hi - 2.0 * (hi - lo);
  lo = std::max(lo, floor);
  cfg.abscissa = boost::math::tools::brent_find_minima(height, lo, hi, 30).first;
  return cfg;
}

Complex log_meijer_kernel(const MeijerGSpec& spec, Complex s) {
  Complex acc = s * std::log(spec.z);
  for (double b : spec.b_num) acc += log_gamma(b - s);
  for (double a : spec.a_num) acc += log_gamma(1.0 - a + s);
  for (double b : spec.b_den) acc -= log_gamma(1.0 - b + s);
  for (double a : spec.a_den) acc -= log_gamma(a - s);
  return acc;
}

void check_imag_residual(double re, double im, const char* what) {
  if (std::abs(im) > 1e-8 * std::max(std::abs(re), 1e-12)) {
    throw ResidualImagError(std::string(what) + ": imaginary residue " +
                            std::to_string(im) + " exceeds bound for value " +
                            std::to_string(re));
  }
}

ContourIntegral integrate_meijer_g(const MeijerGSpec& spec, const ContourConfig& cfg) {
  validate_spec(spec);
  validate_contour(cfg);
  const PoleFreeStrip strip = pole_free_strip(spec.a_num, spec.b_num);
  if (!strip.contains(cfg.abscissa)) {
    throw NoStripError("Meijer G: abscissa " + std::to_string(cfg.abscissa) +
                       " is outside the pole-free strip");
  }

  const double c = cfg.abscissa;
  // ds = i du, so 1/(2πi) ∫ ds becomes 1/(2π) ∫ du.
  const LineIntegrand integrand = [&spec, c](double u) {
    return std::exp(log_meijer_kernel(spec, Complex(c, u))) / (2.0 * std::numbers::pi);
  };
  LineOptions options;
  options.half_width = cfg.half_width;
  options.rel_tol = cfg.rel_tol;
  options.max_panels = cfg.max_panels;
  const LineIntegral line = integrate_line(integrand, options);

  ContourIntegral out;
  out.value = line.value.real();
  out.imag_residual = line.value.imag();
  out.half_width = line.half_width;
  out.panels = line.rule.right_panels().size();
  return out;
}

double eval_meijer_g(const MeijerGSpec& spec, const ContourConfig& cfg) {
  const ContourIntegral r = integrate_meijer_g(spec, cfg);
  check_imag_residual(r.value, r.imag_residual, "Meijer G");
  return r.value;
}

double eval_meijer_g(const MeijerGSpec& spec) {
  validate_spec(spec);
  return eval_meijer_g(spec, contour_for(spec));
}

}  // namespace gkfade

#pragma once

#include <vector>

#include "gkfade/special_fn.hpp"

namespace gkfade {

/// Parameters of G^{m,n}_{p,q}[z | a; b]:
///
///   G = 1/(2πi) ∫ Π Γ(b_num - s) Π Γ(1 - a_num + s)
///               / (Π Γ(1 - b_den + s) Π Γ(a_den - s)) z^s ds
///
/// so n = |a_num|, p = n + |a_den|, m = |b_num|, q = m + |b_den|.
struct MeijerGSpec {
  std::vector<double> a_num;
  std::vector<double> a_den;
  std::vector<double> b_num;
  std::vector<double> b_den;
  double z = 1.0;
};

/// Placement and truncation of a vertical Mellin–Barnes contour.
struct ContourConfig {
  /// Re(s) of the vertical line.
  double abscissa = 0.0;
  /// Truncation W of the Im(s) range.
  double half_width = 50.0;
  double rel_tol = 1e-10;
  int max_panels = 4096;
};

/// Open interval of Re(s) free of poles of the numerator gammas.
struct PoleFreeStrip {
  double left;   // -inf when there are no left poles
  double right;  // first right pole
  bool contains(double c) const { return c > left && c < right; }
};

/// Strip between the left poles of Γ(1 - a + s) and the right poles of
/// Γ(b - s).  Throws NoStripError if there are no right poles or the two
/// families overlap.
PoleFreeStrip pole_free_strip(const std::vector<double>& a_num,
                              const std::vector<double>& b_num);

/// Default contour: midpoint of the pole-free strip.  With no left poles the
/// line goes half a unit left of the first right pole, or through the
/// minimum of the integrand on the real axis when that lies further left.
/// W = 50.
ContourConfig contour_for(const MeijerGSpec& spec);

/// log of the Mellin–Barnes kernel (gamma ratio times z^s) at s.
Complex log_meijer_kernel(const MeijerGSpec& spec, Complex s);

struct ContourIntegral {
  double value = 0.0;
  double imag_residual = 0.0;
  /// Truncation half-width after adaptive extension.
  double half_width = 0.0;
  /// Number of accepted coarse panels on each side of Im(s) = 0.
  std::size_t panels = 0;
};

/// Evaluates the single-variable Meijer G-function along the vertical line of
/// `cfg`, reporting the imaginary residue.  Throws DomainError for invalid
/// specs, NoStripError when the abscissa is outside the strip,
/// ConvergenceError when the line integral fails, and ResidualImagError when
/// the imaginary part is not negligible.
ContourIntegral integrate_meijer_g(const MeijerGSpec& spec, const ContourConfig& cfg);

/// Real value of G^{m,n}_{p,q}[z | a; b] on the given contour.
double eval_meijer_g(const MeijerGSpec& spec, const ContourConfig& cfg);

/// Same, on the default contour from contour_for().
double eval_meijer_g(const MeijerGSpec& spec);

/// Imaginary residue bound shared by every contour evaluation.
void check_imag_residual(double re, double im, const char* what);

void validate_contour(const ContourConfig& cfg);

}  // namespace gkfade

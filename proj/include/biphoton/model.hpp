#pragma once

#include <complex>

#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"
#include "biphoton/pattern.hpp"

namespace biphoton {

using cplx = std::complex<double>;

/// Everything the four-term post-slit amplitude needs. weight_same multiplies the
/// pair of terms where both photons crossed the same opening (split along r),
/// weight_diff the pair where they crossed different openings (split along q).
struct FinalStateTerms {
  double lambda = 0.0;
  double slit_sep = 0.0;
  double slit_width = 0.0;
  double dist_slit_screen = 0.0;
  double weight_same = 0.0;
  double weight_diff = 0.0;
  // Overall prefactor 2 C(alpha_L) / (i lambda D) with C the freely-propagated
  // Gaussian prefactor at the slit plane. Only its modulus is observable; the phase
  // follows the principal-branch convention of the propagator.
  std::complex<double> prefactor;
};

FinalStateTerms term_weights(const ExperimentParams& p);

/// Single-slit diffraction envelope f(x) = sin(2 pi x eps / (lambda D)) / (2 pi x / (lambda D)).
/// f(0) = eps; first zero at x = lambda D / (2 eps). Even in x.
double envelope_f(double x, const FinalStateTerms& t);

/// Four-term amplitude at screen coordinates r = (x1+x2)/2, q = (x1-x2)/2:
/// same-slit pair carries the r-shifted envelopes, different-slit pair the q-shifted
/// ones, each with a quadratic phase exp(2 pi i (.)^2 / (lambda D)).
std::complex<double> final_state_amplitude(double r, double q, const FinalStateTerms& t);

/// Coincidence rate for detectors moved together (x1 = x2 = x), same-slit pair only:
///   P(x) proportional to f(x)^2 * (1 + cos(4 pi x d / (lambda D)))
/// i.e. fringes of spacing lambda D / (2 d), half the ordinary double-slit period.
double coincidence_law(double x, const FinalStateTerms& t);

/// Rate at x1 with the partner detector fixed at x2 = 0:
///   P(x1) proportional to f(x1/2)^2 * (1 + cos(2 pi x1 d / (lambda D)))
/// fringes of spacing lambda D / d.
double conditional_law(double x1, const FinalStateTerms& t);

/// |final_state_amplitude|^2 sliced like the laws above, but keeping all four terms
/// and the exact shifted envelopes; used to cross-check the laws inside their regime
/// and to show where they break outside it.
double four_term_coincidence(double x, const FinalStateTerms& t);
double four_term_conditional(double x1, const FinalStateTerms& t);

Pattern coincidence_pattern(const Grid1D& axis, const FinalStateTerms& t);
Pattern conditional_pattern(const Grid1D& axis, const FinalStateTerms& t);
Pattern four_term_coincidence_pattern(const Grid1D& axis, const FinalStateTerms& t);
Pattern four_term_conditional_pattern(const Grid1D& axis, const FinalStateTerms& t);

}  // namespace biphoton

#pragma once

#include "biphoton/exec.hpp"
#include "biphoton/field.hpp"

namespace biphoton {

/// Two openings of width `slit_width` centered at +/- slit_sep/2. Transmission is
/// binary; a node exactly on an edge transmits (closed intervals). Grids aligned so
/// edges fall on cell boundaries make the on-grid open area exact.
struct DoubleSlitMask {
  double slit_sep = 0.0;
  double slit_width = 0.0;

  DoubleSlitMask(double sep, double width);

  bool transmits(double x) const;
};

/// Multiply the field by T(x1) T(x2). Throws UnderResolvedSlit when either axis has
/// fewer than 8 nodes per opening. Never increases norm2; applying twice is exact.
ComplexField2D apply_mask(const ComplexField2D& f, const DoubleSlitMask& mask,
                          Exec exec = Exec::Parallel);

/// Probability split of a (normalized) slit-plane state over the mask, by quadrature
/// of |psi|^2: both photons in the same opening, in different openings, and the
/// blocked remainder. `total_norm2` < 0 means "use the on-window norm"; pass 1.0 when
/// the field is a local window onto a state normalized over the whole plane (then
/// p_blocked includes the mass outside the window).
struct SlitCaseWeights {
  double p_same = 0.0;
  double p_diff = 0.0;
  double p_blocked = 0.0;
  // The same split measured over center-of-mass rectangles |r -+ d/2| <= eps/2 x
  // |q| <= eps/2 (and the mirrored pair for p_diff). These rectangles circumscribe
  // the true per-slit squares rotated 45 degrees into (r, q), so the two partitions
  // agree only approximately; both are reported when they visibly disagree.
  double p_same_rq = 0.0;
  double p_diff_rq = 0.0;
  bool partitions_disagree = false;
};

SlitCaseWeights case_weights(const ComplexField2D& f, const DoubleSlitMask& mask,
                             double total_norm2 = -1.0, Exec exec = Exec::Parallel);

}  // namespace biphoton

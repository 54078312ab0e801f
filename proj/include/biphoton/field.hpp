#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "biphoton/exec.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"
#include "biphoton/pattern.hpp"

namespace biphoton {

using cplx = std::complex<double>;

/// Two-photon amplitude sampled at the nodes of a tensor grid, row-major with the
/// x1 index outermost: amp[i * grid2.n + j] = psi(x1_i, x2_j).
struct ComplexField2D {
  Grid1D grid1;
  Grid1D grid2;
  std::vector<cplx> amp;

  ComplexField2D() = default;
  ComplexField2D(const Grid1D& g1, const Grid1D& g2)
      : grid1(g1), grid2(g2), amp(g1.n * g2.n, cplx(0.0, 0.0)) {}

  cplx& at(std::size_t i, std::size_t j) { return amp[i * grid2.n + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return amp[i * grid2.n + j]; }
};

/// Whether samplers must verify that the window contains the state. Allow is for
/// deliberately local views (e.g. a slit-plane window much narrower than the beam).
enum class BoundaryCheck { Enforce, Allow };

/// Throws GridTooNarrow when the largest boundary-ring amplitude exceeds
/// `threshold` times the largest amplitude anywhere.
void check_boundary(const ComplexField2D& f, double threshold = 1e-6);

/// Sample the source-plane state
///   psi(x1,x2) = exp(-(x1-x2)^2/(4 sigma^2)) * exp(-(x1+x2)^2/(4 omega^2)) / sqrt(pi sigma omega)
/// at the grid nodes. Real-valued at this plane; unit norm over the whole plane.
ComplexField2D sample_gepr(const ExperimentParams& p, const Grid1D& g1, const Grid1D& g2,
                           BoundaryCheck check = BoundaryCheck::Enforce,
                           Exec exec = Exec::Parallel);

/// Midpoint quadrature of |psi|^2 over the window.
double norm2(const ComplexField2D& f, Exec exec = Exec::Parallel);

/// Rescale so norm2 == 1; throws ZeroNorm on an identically tiny field.
void normalize(ComplexField2D& f, Exec exec = Exec::Parallel);

struct Moments {
  double mean1 = 0.0, mean2 = 0.0;
  double var1 = 0.0, var2 = 0.0;
  double cov = 0.0;
};

/// First and second moments of |psi|^2 (window-normalized).
Moments moments(const ComplexField2D& f, Exec exec = Exec::Parallel);

/// Moments of the momentum density |psi~(k1,k2)|^2 on the conjugate grid.
Moments spectral_moments(const ComplexField2D& f, Exec exec = Exec::Parallel);

/// Quadrature of |psi~|^2 over the conjugate grid; equals norm2 up to transform
/// round-off (Parseval), which is what tests pin down.
double spectral_norm2(const ComplexField2D& f, Exec exec = Exec::Parallel);

/// |psi(x,x)|^2 along the diagonal; requires grid1 == grid2.
Pattern diagonal_slice(const ComplexField2D& f, Provenance prov, std::string label);

/// |psi(x1, x2_fixed)|^2 at the node nearest x2_fixed (grids are chosen so the
/// interesting x2 values are nodes); throws OutOfRange when x2_fixed is off-window.
Pattern conditional_slice(const ComplexField2D& f, double x2_fixed, Provenance prov,
                          std::string label);

/// Debug dump: one JSON header line (grids, schema_version) then raw little-endian
/// re/im double pairs, row-major. Layout is not a stability promise.
void save_field(const ComplexField2D& f, const std::string& path);
ComplexField2D load_field(const std::string& path);

}  // namespace biphoton

#pragma once

#include <complex>

#include "biphoton/field.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/params.hpp"

namespace biphoton {

/// Closed form of the freely propagated source state in center-of-mass coordinates
/// r = (x1+x2)/2, q = (x1-x2)/2:
///
///   psi(r,q) = norm * exp(-q^2 / cq) * exp(-r^2 / cr)
///
/// with cq = sigma^2 + i alpha, cr = omega^2 + i alpha, alpha = lambda * distance / (2 pi).
/// norm = sqrt(sigma omega / pi) / (sqrt(cq) sqrt(cr)) keeps the whole-plane norm at 1
/// for every distance (principal square roots; the common phase exp(-i k0 distance)
/// per photon is dropped, matching the numeric propagator).
struct GaussianBiphoton {
  std::complex<double> cq;
  std::complex<double> cr;
  std::complex<double> norm;
  double alpha = 0.0;
};

GaussianBiphoton propagate_analytic(const ExperimentParams& p, double distance);

/// Sample the closed form on a tensor grid.
ComplexField2D sample_gaussian(const GaussianBiphoton& gb, const Grid1D& g1, const Grid1D& g2,
                               BoundaryCheck check = BoundaryCheck::Enforce,
                               Exec exec = Exec::Parallel);

/// 1/e half-width of |psi| along q: |cq| / sqrt(Re cq) = sqrt((sigma^4 + alpha^2)/sigma^2).
/// Equals sigma at distance 0 and grows like alpha/sigma far downstream.
double q_width(const GaussianBiphoton& gb);
double r_width(const GaussianBiphoton& gb);

/// Paraxial propagation over `distance` by the spectral multiplier
/// exp(-i * distance * k^2 / (2 k0)) applied per axis. Errors: NonPositiveDistance on
/// distance < 0, AliasingRisk when the band-edge spectral amplitude exceeds 1e-6 of
/// the spectral peak (the periodic transform would wrap that content).
ComplexField2D propagate_numeric(const ComplexField2D& f, const ExperimentParams& p,
                                 double distance, Exec exec = Exec::Parallel);

/// Propagation over `distance` by direct midpoint quadrature of the paraxial kernel
///   K(X, x') = sqrt(1/(i lambda distance)) * exp(i pi (X - x')^2 / (lambda distance))
/// applied along each axis onto an independent output grid. The input must be
/// compactly supported inside its window (outer ring below 1e-9 of peak), which a
/// masked field satisfies exactly; there is no periodic wrap-around by construction.
/// This is the slit-to-screen step: the diffracted envelope decays only like 1/x, so
/// no power-of-two periodic window can hold it, while the truncated input is compact.
/// The discrete kernel sum has alias images spaced lambda*distance/dx apart; an
/// AliasingRisk error fires if that spacing is under twice the combined input and
/// output window extents on either axis. NonPositiveDistance unless distance > 0.
ComplexField2D fresnel_to_grid(const ComplexField2D& f, const ExperimentParams& p,
                               double distance, const Grid1D& out1, const Grid1D& out2,
                               Exec exec = Exec::Parallel);

}  // namespace biphoton

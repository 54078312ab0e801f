#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "biphoton/errors.hpp"
#include "biphoton/field.hpp"
#include "biphoton/propagation.hpp"

using namespace biphoton;

namespace {

double peak_abs(const ComplexField2D& f) {
  double peak = 0.0;
  for (const cplx& a : f.amp) peak = std::max(peak, std::abs(a));
  return peak;
}

double max_node_diff(const ComplexField2D& a, const ComplexField2D& b) {
  REQUIRE(a.amp.size() == b.amp.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    worst = std::max(worst, std::abs(a.amp[i] - b.amp[i]));
  return worst;
}

}  // namespace

TEST_CASE("zero flight leaves the closed form at the source widths") {
  ExperimentParams p;
  p.sigma = 0.5;
  p.omega_big = 5.0;
  const GaussianBiphoton gb = propagate_analytic(p, 0.0);
  CHECK(gb.alpha == 0.0);
  CHECK(gb.cq.real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gb.cq.imag() == 0.0);
  CHECK(gb.cr.real() == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(q_width(gb) == doctest::Approx(p.sigma).epsilon(1e-15));
  CHECK(r_width(gb) == doctest::Approx(p.omega_big).epsilon(1e-15));

  const Grid1D g = Grid1D::symmetric(22.0, 128);
  const ComplexField2D direct = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const ComplexField2D via = sample_gaussian(gb, g, g, BoundaryCheck::Allow);
  CHECK(max_node_diff(direct, via) <= 1e-12);
}

TEST_CASE("complex widths after one reduced scale of flight") {
  ExperimentParams p;
  p.lambda = 1.0;
  p.sigma = 0.5;
  p.omega_big = 5.0;
  const double two_pi = 2.0 * 3.14159265358979323846;
  const GaussianBiphoton gb = propagate_analytic(p, two_pi);
  // alpha = lambda * distance / (2 pi) = 1 here, so cq = sigma^2 + i exactly.
  CHECK(gb.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gb.cq.real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gb.cq.imag() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gb.cr.real() == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(gb.cr.imag() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q_width(gb) ==
        doctest::Approx(std::sqrt((0.0625 + 1.0) / 0.25)).epsilon(1e-12));
}

TEST_CASE("flight preserves the norm of the closed form") {
  ExperimentParams p;
  p.sigma = 1.0;
  p.omega_big = 2.0;
  const Grid1D g = Grid1D::symmetric(16.0, 256);
  const GaussianBiphoton gb = propagate_analytic(p, 1.0);
  const ComplexField2D f = sample_gaussian(gb, g, g);
  CHECK(norm2(f) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("spectral flight over zero distance is the identity") {
  ExperimentParams p;
  p.sigma = 1.0;
  p.omega_big = 2.0;
  const Grid1D g = Grid1D::symmetric(12.0, 128);
  const ComplexField2D f = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const ComplexField2D f0 = propagate_numeric(f, p, 0.0);
  CHECK(max_node_diff(f, f0) <= 1e-12);
}

TEST_CASE("spectral flight is unitary and composes") {
  ExperimentParams p;
  p.sigma = 1.0;
  p.omega_big = 2.0;
  const Grid1D g = Grid1D::symmetric(12.0, 256);
  const ComplexField2D f = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const double n0 = norm2(f);

  ComplexField2D two_hop = propagate_numeric(f, p, 0.3);
  two_hop = propagate_numeric(two_hop, p, 0.7);
  const ComplexField2D one_hop = propagate_numeric(f, p, 1.0);

  CHECK(std::abs(norm2(one_hop) / n0 - 1.0) <= 1e-12);
  CHECK(std::abs(norm2(two_hop) / n0 - 1.0) <= 1e-12);
  CHECK(max_node_diff(two_hop, one_hop) / peak_abs(one_hop) <= 1e-10);
}

TEST_CASE("spectral flight reproduces the closed form") {
  ExperimentParams p;
  p.sigma = 1.0;
  p.omega_big = 2.0;
  const Grid1D g = Grid1D::symmetric(12.0, 256);
  const ComplexField2D src = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const ComplexField2D numeric = propagate_numeric(src, p, 1.0);
  const ComplexField2D closed =
      sample_gaussian(propagate_analytic(p, 1.0), g, g, BoundaryCheck::Allow);
  CHECK(max_node_diff(numeric, closed) / peak_abs(closed) <= 1e-6);
}

TEST_CASE("under-sampled spectra are refused rather than wrapped") {
  ExperimentParams p;
  p.sigma = 0.2;
  p.omega_big = 0.5;
  const Grid1D g = Grid1D::symmetric(4.0, 32);
  const ComplexField2D f = sample_gepr(p, g, g, BoundaryCheck::Allow);
  CHECK_THROWS_AS((void)propagate_numeric(f, p, 1.0), Error);
}

TEST_CASE("negative distances are refused") {
  ExperimentParams p;
  const Grid1D g = Grid1D::symmetric(8.0, 64);
  ComplexField2D f(g, g);
  f.at(32, 32) = 1.0;
  CHECK_THROWS_AS((void)propagate_numeric(f, p, -1.0), Error);
  CHECK_THROWS_AS((void)fresnel_to_grid(f, p, 0.0, g, g), Error);
  CHECK_THROWS_AS((void)fresnel_to_grid(f, p, -2.0, g, g), Error);
}

TEST_CASE("kernel quadrature agrees with the spectral flight") {
  // Compact product state, one shared window. The spectral flight is periodic,
  // so its result near the boundary contains wrapped tails (a few 1e-5 of peak
  // here); away from the edges both propagators must coincide.
  ExperimentParams p;
  p.sigma = 0.3;
  p.omega_big = 0.3;
  const Grid1D g = Grid1D::symmetric(12.0, 256);
  const ComplexField2D src = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const ComplexField2D spectral = propagate_numeric(src, p, 5.0);
  const ComplexField2D kernel = fresnel_to_grid(src, p, 5.0, g, g);
  const double peak = peak_abs(spectral);
  double interior = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (std::abs(g.node(i)) > 6.0) continue;
    for (std::size_t j = 0; j < g.n; ++j) {
      if (std::abs(g.node(j)) > 6.0) continue;
      interior = std::max(interior, std::abs(kernel.at(i, j) - spectral.at(i, j)));
    }
  }
  CHECK(interior / peak <= 1e-8);
}

TEST_CASE("kernel quadrature needs compact support") {
  ExperimentParams p;
  p.sigma = 2.0;
  p.omega_big = 2.0;
  const Grid1D g = Grid1D::symmetric(4.0, 64);
  const ComplexField2D wide = sample_gepr(p, g, g, BoundaryCheck::Allow);
  CHECK_THROWS_AS((void)fresnel_to_grid(wide, p, 5.0, g, g), Error);
}

TEST_CASE("kernel quadrature refuses windows its alias images would reach") {
  ExperimentParams p;
  p.sigma = 0.3;
  p.omega_big = 0.3;
  const Grid1D g = Grid1D::symmetric(12.0, 256);
  const ComplexField2D src = sample_gepr(p, g, g, BoundaryCheck::Allow);
  // Image spacing lambda * distance / dx = 32 falls inside twice the combined
  // extent 2 * (12 + 30) = 84; must throw rather than fold fringes in.
  const Grid1D far = Grid1D::symmetric(30.0, 256);
  CHECK_THROWS_AS((void)fresnel_to_grid(src, p, 3.0, far, far), Error);
}

TEST_CASE("kernel quadrature gives identical bits on both execution paths") {
  ExperimentParams p;
  p.sigma = 0.3;
  p.omega_big = 0.3;
  const Grid1D g = Grid1D::symmetric(12.0, 128);
  const Grid1D out = Grid1D::centered_on_zero(0.125, 128);
  const ComplexField2D src = sample_gepr(p, g, g, BoundaryCheck::Allow);
  const ComplexField2D a = fresnel_to_grid(src, p, 10.0, out, out, Exec::Serial);
  const ComplexField2D b = fresnel_to_grid(src, p, 10.0, out, out, Exec::Parallel);
  CHECK(max_node_diff(a, b) == 0.0);
}

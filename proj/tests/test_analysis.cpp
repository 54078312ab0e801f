#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/pattern.hpp"

using namespace biphoton;

namespace {

// Cosine fringes of known period under a wide gaussian envelope.
Pattern synthetic_fringes(double period, double envelope_sigma) {
  const Grid1D axis = Grid1D::centered_on_zero(1.5625, 1024);
  std::vector<double> raw(axis.n);
  for (std::size_t m = 0; m < axis.n; ++m) {
    const double x = axis.node(m);
    raw[m] = (1.0 + std::cos(2.0 * 3.14159265358979323846 * x / period)) *
             std::exp(-x * x / (2.0 * envelope_sigma * envelope_sigma));
  }
  return make_pattern(axis, std::move(raw), Provenance::Analytic, "synthetic");
}

}  // namespace

TEST_CASE("fringe metrics recover a known period and full contrast") {
  // Wide envelope: a tight one pulls the refined peak positions measurably
  // toward the center, which is real structure, not a metric error.
  const Pattern p = synthetic_fringes(100.0, 2000.0);
  const FringeMetrics m = fringe_metrics(p);
  CHECK(m.spacing == doctest::Approx(100.0).epsilon(1e-3));
  CHECK(m.visibility == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(m.n_peaks_used >= 3);
  CHECK(m.envelope_halfwidth > 100.0);
}

TEST_CASE("featureless patterns are refused") {
  const Grid1D axis = Grid1D::centered_on_zero(1.0, 256);
  Pattern flat;
  flat.axis = axis;
  flat.density.assign(axis.n, 0.5);
  flat.label = "flat";
  CHECK_THROWS_AS((void)fringe_metrics(flat), Error);

  Pattern empty;
  empty.axis = axis;
  empty.density.assign(axis.n, 0.0);
  empty.label = "empty";
  CHECK_THROWS_AS((void)fringe_metrics(empty), Error);
}

TEST_CASE("fringes under ten nodes per period are refused") {
  const Grid1D axis = Grid1D::centered_on_zero(1.0, 512);
  std::vector<double> raw(axis.n);
  for (std::size_t m = 0; m < axis.n; ++m) {
    const double x = axis.node(m);
    raw[m] = 1.0 + std::cos(2.0 * 3.14159265358979323846 * x / 5.0);
  }
  const Pattern p = make_pattern(axis, std::move(raw), Provenance::Analytic, "dense");
  CHECK_THROWS_AS((void)fringe_metrics(p), Error);
}

TEST_CASE("metrics ignore the overall scale of the density") {
  const Pattern unit = synthetic_fringes(100.0, 300.0);
  Pattern scaled = unit;
  for (double& v : scaled.density) v *= 7.25;
  const FringeMetrics a = fringe_metrics(unit);
  const FringeMetrics b = fringe_metrics(scaled);
  CHECK(b.spacing == doctest::Approx(a.spacing).epsilon(1e-9));
  CHECK(b.visibility == doctest::Approx(a.visibility).epsilon(1e-9));
  CHECK(b.n_peaks_used == a.n_peaks_used);
  CHECK(b.envelope_halfwidth == doctest::Approx(a.envelope_halfwidth).epsilon(1e-9));
}

TEST_CASE("comparing a pattern against itself gives exact zeros") {
  const Pattern p = synthetic_fringes(100.0, 300.0);
  const PatternComparison c = compare(p, p);
  CHECK(c.l2_err == 0.0);
  CHECK(c.max_err == 0.0);
  CHECK(c.spacing_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.visibility_diff == 0.0);
}

TEST_CASE("a one-node shift shows up in every comparison channel") {
  const Pattern p = synthetic_fringes(100.0, 300.0);
  Pattern shifted = p;
  for (std::size_t m = 0; m + 1 < p.density.size(); ++m)
    shifted.density[m] = p.density[m + 1];
  shifted.density.back() = 0.0;
  const PatternComparison c = compare(p, shifted);
  CHECK(c.l2_err > 1e-4);
  CHECK(c.max_err > 1e-4);
  CHECK(c.spacing_ratio == doctest::Approx(1.0).epsilon(1e-2));

  const Grid1D other = Grid1D::centered_on_zero(1.0, 1024);
  Pattern wrong_axis = p;
  wrong_axis.axis = other;
  CHECK_THROWS_AS((void)compare(p, wrong_axis), Error);
}

TEST_CASE("windowed error matches the full comparison on the whole axis") {
  const Pattern a = synthetic_fringes(100.0, 300.0);
  Pattern b = a;
  for (std::size_t m = 0; m < b.density.size(); ++m)
    b.density[m] *= 1.0 + 0.01 * std::sin(0.01 * static_cast<double>(m));
  const PatternComparison c = compare(a, b);
  const double full = l2_error_window(a, b, a.axis.x_min - 1.0, a.axis.x_max + 1.0);
  CHECK(full == doctest::Approx(c.l2_err).epsilon(1e-12));
  // Restricting to the far tail where the envelope died leaves nothing to compare.
  CHECK_THROWS_AS((void)l2_error_window(a, b, 1e6, 2e6), Error);
}

TEST_CASE("mirror asymmetry separates even patterns from skewed ones") {
  const Pattern even = synthetic_fringes(100.0, 300.0);
  CHECK(mirror_asymmetry(even) < 1e-12);

  // x = 125 sits between dark fringes, so the bump carries real density.
  Pattern skewed = even;
  const std::size_t bump = even.axis.nearest_node(125.0);
  skewed.density[bump] *= 1.5;
  CHECK(mirror_asymmetry(skewed) > 0.01);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "biphoton/errors.hpp"
#include "biphoton/params.hpp"

using namespace biphoton;

TEST_CASE("defaults validate and expose the wave number") {
  ExperimentParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.k0() == doctest::Approx(2.0 * 3.14159265358979323846).epsilon(1e-15));
}

TEST_CASE("every length must be positive and finite") {
  auto expect_reject = [](auto&& mutate) {
    ExperimentParams p;
    mutate(p);
    CHECK_THROWS_AS(p.validate(), Error);
  };
  expect_reject([](ExperimentParams& p) { p.lambda = 0.0; });
  expect_reject([](ExperimentParams& p) { p.sigma = -1.0; });
  expect_reject([](ExperimentParams& p) { p.omega_big = 0.0; });
  expect_reject([](ExperimentParams& p) { p.slit_sep = -5.0; });
  expect_reject([](ExperimentParams& p) { p.slit_width = 0.0; });
  expect_reject([](ExperimentParams& p) { p.dist_source_slit = 0.0; });
  expect_reject([](ExperimentParams& p) { p.dist_slit_screen = -1.0; });
  expect_reject([](ExperimentParams& p) {
    p.lambda = std::numeric_limits<double>::quiet_NaN();
  });
  expect_reject([](ExperimentParams& p) {
    p.sigma = std::numeric_limits<double>::infinity();
  });
}

TEST_CASE("openings may not overlap") {
  ExperimentParams p;
  p.slit_width = p.slit_sep;
  CHECK_THROWS_AS(p.validate(), Error);
  p.slit_width = 2.0 * p.slit_sep;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("alpha is lambda distance over 2 pi") {
  ExperimentParams p;
  p.lambda = 1.0;
  p.dist_source_slit = 2.0 * 3.14159265358979323846;
  CHECK(p.alpha() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.alpha_for(0.0) == 0.0);
  p.lambda = 2.0;
  CHECK(p.alpha_for(3.14159265358979323846) == doctest::Approx(1.0).epsilon(1e-15));
  // Doubling lambda and halving distance leaves the spread parameter alone.
  ExperimentParams q = p;
  q.lambda = 2.0 * p.lambda;
  q.dist_source_slit = 0.5 * p.dist_source_slit;
  CHECK(q.alpha() == doctest::Approx(p.alpha()).epsilon(1e-15));
}

TEST_CASE("regime report names the checks and flags the defaults honestly") {
  ExperimentParams p;
  const RegimeReport rep = regime_report(p);
  REQUIRE(rep.checks.size() == 4);
  REQUIRE(rep.find("beam_wide") != nullptr);
  REQUIRE(rep.find("slit_narrow") != nullptr);
  REQUIRE(rep.find("slit_width_sq_negligible") != nullptr);
  REQUIRE(rep.find("cross_slit_suppressed") != nullptr);
  CHECK(rep.find("nonexistent") == nullptr);

  CHECK(rep.find("beam_wide")->value ==
        doctest::Approx(2500.0 / p.alpha()).epsilon(1e-12));
  CHECK(rep.find("beam_wide")->ok);
  CHECK(rep.find("slit_narrow")->value == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(rep.find("slit_narrow")->ok);
  CHECK(rep.find("slit_width_sq_negligible")->ok);

  // At the stock source-slit distance the two slit-pair amplitudes are nearly
  // equal, so the half-period pair law does not hold there; the report must
  // say so rather than bless the defaults.
  const RegimeCheck* cross = rep.find("cross_slit_suppressed");
  CHECK(cross->value == doctest::Approx(diff_slit_weight(p) / same_slit_weight(p))
                            .epsilon(1e-12));
  CHECK(cross->value > 0.9);
  CHECK_FALSE(cross->ok);
  CHECK_FALSE(rep.all_ok);

  ExperimentParams close = p;
  close.dist_source_slit = 0.5;
  const RegimeReport rep2 = regime_report(close);
  CHECK(rep2.find("cross_slit_suppressed")->ok);
  CHECK(rep2.all_ok);
}

TEST_CASE("entanglement flag tracks unequal widths") {
  ExperimentParams p;
  CHECK(regime_report(p).entangled);
  p.sigma = p.omega_big;
  CHECK_FALSE(regime_report(p).entangled);
}

TEST_CASE("slit-pair weights at the stock geometry") {
  ExperimentParams p;
  // exp(-d^2 W^2 / (4 W^4 + 4 a^2)) and the sigma twin, a = lambda L / 2 pi.
  CHECK(same_slit_weight(p) == doctest::Approx(0.9975032260).epsilon(1e-6));
  CHECK(diff_slit_weight(p) == doctest::Approx(0.9938519909).epsilon(1e-6));

  // Suppressed-correlation regime: the different-slit pair dies, the same-slit
  // pair survives untouched.
  ExperimentParams close = p;
  close.dist_source_slit = 0.5;
  CHECK(diff_slit_weight(close) < 1e-9);
  CHECK(same_slit_weight(close) == doctest::Approx(std::exp(-25.0 / 10000.0)).epsilon(1e-6));
}

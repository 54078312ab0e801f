#include "biphoton/params.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"

namespace biphoton {

const char* scenario_geometry_name(ScenarioGeometry g) {
  return g == ScenarioGeometry::Colocated ? "Colocated" : "Nonlocal";
}

ScenarioGeometry scenario_geometry_from_name(const std::string& name) {
  if (name == "Colocated") return ScenarioGeometry::Colocated;
  if (name == "Nonlocal") return ScenarioGeometry::Nonlocal;
  fail(ErrorCode::ConfigError, "unknown scenario geometry '" + name + "'");
}

double ExperimentParams::k0() const { return 2.0 * std::numbers::pi / lambda; }

double ExperimentParams::alpha_for(double distance) const {
  return lambda * distance / (2.0 * std::numbers::pi);
}

double ExperimentParams::alpha() const { return alpha_for(dist_source_slit); }

void ExperimentParams::validate() const {
  const struct {
    const char* name;
    double value;
  } lengths[] = {
      {"lambda", lambda},
      {"sigma", sigma},
      {"omega_big", omega_big},
      {"slit_sep", slit_sep},
      {"slit_width", slit_width},
      {"dist_source_slit", dist_source_slit},
      {"dist_slit_screen", dist_slit_screen},
  };
  for (const auto& l : lengths) {
    if (!(l.value > 0.0) || !std::isfinite(l.value))
      fail(ErrorCode::NonPositiveLength,
           std::string(l.name) + " = " + std::to_string(l.value) + " must be a positive length");
  }
  if (slit_width >= slit_sep)
    fail(ErrorCode::OverlappingSlits, "slit_width = " + std::to_string(slit_width) +
                                          " must be smaller than slit_sep = " +
                                          std::to_string(slit_sep));
}

const RegimeCheck* RegimeReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

RegimeReport regime_report(const ExperimentParams& p) {
  RegimeReport rep;
  const double alpha = p.alpha();

  // Incoming beam much wider than the spread acquired over L.
  rep.checks.push_back({"beam_wide", p.omega_big * p.omega_big / alpha,
                        p.omega_big * p.omega_big / alpha >= 10.0,
                        "omega_big^2 * 2*pi / (lambda * L); want >> 1"});

  rep.checks.push_back({"slit_narrow", p.slit_sep / p.slit_width,
                        p.slit_sep / p.slit_width >= 10.0, "slit_sep / slit_width; want >> 1"});

  // Quadratic phase across one opening at the screen, radians; quadratic-in-width
  // terms are dropped from the closed-form amplitudes.
  const double eps_phase = std::numbers::pi * p.slit_width * p.slit_width /
                           (2.0 * p.lambda * p.dist_slit_screen);
  rep.checks.push_back({"slit_width_sq_negligible", eps_phase, eps_phase < 1e-2,
                        "pi * slit_width^2 / (2 * lambda * D) in radians; want << 1"});

  // The half-period coincidence fringes require the different-slit amplitude pair
  // to be negligible against the same-slit pair at the slit plane.
  const double suppression = diff_slit_weight(p) / same_slit_weight(p);
  rep.checks.push_back({"cross_slit_suppressed", suppression, suppression < 1e-2,
                        "diff-slit/same-slit weight at the slit plane; want << 1"});

  rep.entangled = p.sigma != p.omega_big;
  rep.all_ok = true;
  for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
  return rep;
}

double same_slit_weight(const ExperimentParams& p) {
  const double a = p.alpha();
  const double w2 = p.omega_big * p.omega_big;
  return std::exp(-p.slit_sep * p.slit_sep * w2 / (4.0 * w2 * w2 + 4.0 * a * a));
}

double diff_slit_weight(const ExperimentParams& p) {
  const double a = p.alpha();
  const double s2 = p.sigma * p.sigma;
  return std::exp(-p.slit_sep * p.slit_sep * s2 / (4.0 * s2 * s2 + 4.0 * a * a));
}

}  // namespace biphoton

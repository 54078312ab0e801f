#pragma once

#include <string>
#include <vector>

namespace biphoton {

/// Detector-plane geometry. Colocated: slit and screen on one arm, both photons pass
/// the same double slit. Nonlocal: mirror arms of length L with one slit plane each
/// and detectors scanned in synchrony; the amplitudes are identical term by term, so
/// the two geometries differ only in labeling.
enum class ScenarioGeometry { Colocated, Nonlocal };

const char* scenario_geometry_name(ScenarioGeometry g);
ScenarioGeometry scenario_geometry_from_name(const std::string& name);

/// Physical inputs, all in units of the wavelength unless noted. sigma is the
/// relative-coordinate width of the source state, omega_big the center-of-mass
/// width; sigma == omega_big is exactly the unentangled product state.
struct ExperimentParams {
  double lambda = 1.0;             // wavelength
  double sigma = 0.5;              // source width in q = (x1 - x2)/2
  double omega_big = 50.0;         // source width in r = (x1 + x2)/2
  double slit_sep = 5.0;           // center-to-center slit distance d
  double slit_width = 0.2;         // opening of each slit
  double dist_source_slit = 100.0; // propagation length L from source to slit plane
  double dist_slit_screen = 1000.0;// propagation length D from slit plane to screen
  ScenarioGeometry scenario = ScenarioGeometry::Colocated;

  double k0() const;                        // 2*pi/lambda
  double alpha() const;                     // lambda*L/(2*pi), the slit-plane spread scale
  double alpha_for(double distance) const;  // lambda*distance/(2*pi)

  /// Throws NonPositiveLength / OverlappingSlits when the geometry is unusable.
  void validate() const;
};

struct RegimeCheck {
  std::string name;
  double value = 0.0;
  bool ok = false;
  std::string note;
};

/// Ratio checks behind the closed-form interference laws. Violations warn rather
/// than fail so the laws can be driven outside their regime on purpose and compared
/// against the numeric pipeline there.
struct RegimeReport {
  std::vector<RegimeCheck> checks;
  bool entangled = false;     // false exactly when sigma == omega_big
  bool all_ok = false;

  const RegimeCheck* find(const std::string& name) const;
};

RegimeReport regime_report(const ExperimentParams& p);

/// Gaussian weight of the amplitude pair where both photons cross the same slit,
/// exp(-d^2 W^2 / (4 W^4 + 4 alpha^2)) with W = omega_big, evaluated at the slit plane.
double same_slit_weight(const ExperimentParams& p);

/// Weight of the pair crossing different slits; same form with W = sigma.
double diff_slit_weight(const ExperimentParams& p);

}  // namespace biphoton

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/exec.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/model.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/params.hpp"
#include "biphoton/pattern.hpp"

namespace biphoton {

/// What the detectors record.
///
/// BiphotonCoincidence: both photons pass one double slit and a single screen
/// counts pairs arriving at the same point; the pattern is read along x1 = x2.
/// NonlocalCoincidence: the photons fly apart through mirrored double slits and
/// two synchronized detectors record pairs at a common scan offset. The
/// propagation mathematics is identical to BiphotonCoincidence and runs through
/// the same code path; only the reported geometry differs.
/// ConditionalSingle: one detector scans while its partner sits fixed at the
/// center of the other screen; the pattern is read along x1 with x2 = 0.
enum class ScenarioKind { BiphotonCoincidence, NonlocalCoincidence, ConditionalSingle };

std::string scenario_kind_name(ScenarioKind kind);
ScenarioKind scenario_kind_from_name(const std::string& name);

/// Source-plane checks on a wide auxiliary grid: second-moment audit of the
/// sampled source state, and the closed-form evolution cross-checked against
/// the spectral propagator over the source-to-slit distance.
struct BeamDiagnostics {
    bool ran = false;
    std::string note;  ///< why the stage was skipped, empty when it ran
    std::optional<Grid1D> grid;
    double position_ratio = 0.0;    ///< measured position spread / quoted closed form
    double wavevector_ratio = 0.0;  ///< measured wave-vector spread / quoted closed form
    double gaussian_crosscheck_peak_err = 0.0;  ///< max |numeric - closed form| / peak
    double norm_drift = 0.0;                    ///< |norm2 after propagation / before - 1|
};

struct SlitStage {
    Grid1D grid;  ///< slit-plane axis, shared by x1 and x2
    double window_norm2 = 0.0;  ///< share of the unit-norm state inside the window
    SlitCaseWeights weights;
    double transmitted_fraction = 0.0;  ///< norm2 surviving the mask
};

struct ScreenStage {
    Grid1D grid;  ///< detector axis
    Pattern oracle;     ///< slit-plane state carried to the screen by kernel quadrature
    Pattern law;        ///< closed-form interference law
    Pattern four_term;  ///< full four-term closed form, no small-weight approximation
    FringeMetrics oracle_metrics;
    FringeMetrics law_metrics;
    FringeMetrics four_term_metrics;
    PatternComparison law_vs_oracle;
    PatternComparison four_term_vs_law;
    double oracle_asymmetry = 0.0;  ///< max |P(x) - P(-x)| / peak
    double law_asymmetry = 0.0;
    double four_term_asymmetry = 0.0;
};

struct Report {
    ScenarioKind kind;
    std::string geometry_note;
    ExperimentParams params;
    RegimeReport regime;
    FinalStateTerms terms;
    std::optional<BeamDiagnostics> beam;
    SlitStage slit;
    ScreenStage screen;
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::BiphotonCoincidence;
    ExperimentParams params;
    std::optional<Grid1D> slit_grid;    ///< default: auto_slit_grid(params)
    std::optional<Grid1D> screen_grid;  ///< default: auto_screen_grid(params)
    bool beam_diagnostics = true;
    Exec exec = Exec::Parallel;
};

/// Slit-plane axis: 16 nodes per slit opening, window holding both slits with
/// margin, node count a power of two in [256, 4096]. Slit edges land on cell
/// boundaries whenever d is an integer multiple of eps/8.
/// Errors: GridTooNarrow when the capped node count cannot cover the slits.
Grid1D auto_slit_grid(const ExperimentParams& p);

/// Detector axis: 1024 nodes, 64 per expected pair-fringe period, zero on a
/// node so the fixed partner detector of ConditionalSingle sits exactly there.
Grid1D auto_screen_grid(const ExperimentParams& p);

/// Square auxiliary grid wide and fine enough that boundary and band-edge
/// amplitudes of the source state stay below exp(-18.5) of peak through the
/// slit-plane flight. Empty when over 4096 nodes per axis would be needed.
std::optional<Grid1D> auto_beam_grid(const ExperimentParams& p);

/// Source-plane audit and propagator cross-check; see BeamDiagnostics.
BeamDiagnostics run_beam_diagnostics(const ExperimentParams& p, Exec exec);

/// Full pipeline for one scenario: closed-form evolution to the slit plane,
/// truncation by the mask, kernel quadrature to the screen, then the recorded
/// slice next to the closed-form laws on the same axis. Module errors are
/// re-raised with the pipeline stage name prefixed.
Report run_scenario(const ScenarioSpec& spec);

struct SweepRequest {
    std::string param;  ///< sigma, omega_big, slit_sep, slit_width, dist_source_slit, dist_slit_screen
    std::vector<double> values;
};

struct SweepPoint {
    double value = 0.0;
    std::optional<Report> report;  ///< empty when the point failed
    std::string error;             ///< failure description, empty on success
};

struct SweepReport {
    ScenarioKind kind;
    std::string param;
    std::vector<SweepPoint> points;
};

/// Run the scenario once per sweep value, up to `jobs` points concurrently.
/// Point failures are recorded in place and do not stop the sweep. Results are
/// ordered by input value order regardless of completion order. Errors:
/// SweepError for an unknown parameter name or fewer than two values.
SweepReport run_sweep(const ScenarioSpec& base, const SweepRequest& request, int jobs = 1);

}  // namespace biphoton

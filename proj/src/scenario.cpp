#include "biphoton/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "biphoton/errors.hpp"
#include "biphoton/field.hpp"
#include "biphoton/propagation.hpp"

namespace biphoton {

namespace {

// Boundary and band-edge amplitudes are held below exp(-kEdgeExponent) of peak,
// which keeps periodic-transform wrap-around under 1e-8 of peak.
constexpr double kEdgeExponent = 18.5;

std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) n *= 2;
    return n;
}

// Re-raise module errors with the pipeline stage visible, without stacking a
// second code prefix (Error::what already starts with the code name).
template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        const std::string prefix = std::string(error_code_name(e.code())) + ": ";
        std::string msg = e.what();
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        fail(e.code(), std::string(name) + ": " + msg);
    }
}

std::string geometry_note_for(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::BiphotonCoincidence:
            return "one double slit past the source; both photons cross it and a single "
                   "screen counts pairs landing together";
        case ScenarioKind::NonlocalCoincidence:
            return "mirrored arms with one double slit each; the two detectors scan their "
                   "screens in synchrony and pairs are counted at the common offset. The "
                   "amplitudes match the single-arm coincidence case term by term, so the "
                   "same pipeline runs with relabeled output";
        case ScenarioKind::ConditionalSingle:
            return "one double slit; the partner detector stays fixed at the center of the "
                   "screen while the other scans";
    }
    return {};
}

double* sweep_target(ExperimentParams& p, const std::string& name) {
    if (name == "sigma") return &p.sigma;
    if (name == "omega_big") return &p.omega_big;
    if (name == "slit_sep") return &p.slit_sep;
    if (name == "slit_width") return &p.slit_width;
    if (name == "dist_source_slit") return &p.dist_source_slit;
    if (name == "dist_slit_screen") return &p.dist_slit_screen;
    return nullptr;
}

}  // namespace

std::string scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::BiphotonCoincidence: return "biphoton_coincidence";
        case ScenarioKind::NonlocalCoincidence: return "nonlocal_coincidence";
        case ScenarioKind::ConditionalSingle: return "conditional_single";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_name(const std::string& name) {
    if (name == "biphoton_coincidence") return ScenarioKind::BiphotonCoincidence;
    if (name == "nonlocal_coincidence") return ScenarioKind::NonlocalCoincidence;
    if (name == "conditional_single") return ScenarioKind::ConditionalSingle;
    fail(ErrorCode::ConfigError,
         "unknown scenario '" + name +
             "' (expected biphoton_coincidence, nonlocal_coincidence, conditional_single)");
}

Grid1D auto_slit_grid(const ExperimentParams& p) {
    p.validate();
    const double dx = p.slit_width / 16.0;
    const double outer_edge = 0.5 * (p.slit_sep + p.slit_width);
    const double h_min = outer_edge + std::max(4.0 * p.slit_width, 0.5);
    std::size_t n = next_pow2(2.0 * h_min / dx);
    n = std::clamp<std::size_t>(n, 256, 4096);
    const double half = 0.5 * static_cast<double>(n) * dx;
    if (half < outer_edge + p.slit_width) {
        fail(ErrorCode::GridTooNarrow,
             "slit-plane window +/-" + std::to_string(half) + " cannot hold slits out to +/-" +
                 std::to_string(outer_edge) + " at 16 nodes per opening");
    }
    return Grid1D::symmetric(half, n);
}

Grid1D auto_screen_grid(const ExperimentParams& p) {
    p.validate();
    const double pair_fringe = p.lambda * p.dist_slit_screen / (2.0 * p.slit_sep);
    return Grid1D::centered_on_zero(pair_fringe / 64.0, 1024);
}

std::optional<Grid1D> auto_beam_grid(const ExperimentParams& p) {
    p.validate();
    const double s2 = p.sigma * p.sigma;
    const double w2 = p.omega_big * p.omega_big;
    const double al = p.alpha();

    // Amplitude decay rates exp(-a q^2 - b r^2) of the source state and of the
    // state after the slit-plane flight; the worst boundary point on a square
    // window of half-width H carries the exponent H^2 * a b / (a + b).
    const double a_src = 1.0 / s2, b_src = 1.0 / w2;
    const double a_prop = s2 / (s2 * s2 + al * al);
    const double b_prop = w2 / (w2 * w2 + al * al);
    const double ring_src = a_src * b_src / (a_src + b_src);
    const double ring_prop = a_prop * b_prop / (a_prop + b_prop);
    const double half = std::sqrt(kEdgeExponent / std::min(ring_src, ring_prop));

    // Spectrum decays as exp(-s2 ku^2 - w2 kv^2); the same ring argument at the
    // band edge bounds the node spacing.
    const double k_req = std::sqrt(kEdgeExponent * (s2 + w2) / (s2 * w2));
    const double dx_max = std::numbers::pi / k_req;

    const std::size_t n = std::max<std::size_t>(128, next_pow2(2.0 * half / dx_max));
    if (n > 4096) return std::nullopt;
    return Grid1D::symmetric(half, n);
}

BeamDiagnostics run_beam_diagnostics(const ExperimentParams& p, Exec exec) {
    BeamDiagnostics d;
    const std::optional<Grid1D> g = auto_beam_grid(p);
    if (!g) {
        d.note = "auxiliary grid would need more than 4096 nodes per axis to hold the "
                 "source state through the slit-plane flight; audit skipped";
        return d;
    }
    d.ran = true;
    d.grid = *g;

    const ComplexField2D source = sample_gepr(p, *g, *g, BoundaryCheck::Allow, exec);
    const double source_norm = norm2(source, exec);

    const Moments m = moments(source, exec);
    const Moments s = spectral_moments(source, exec);
    const double quoted_x = std::sqrt(p.omega_big * p.omega_big + p.sigma * p.sigma);
    const double quoted_k =
        0.25 * std::sqrt(1.0 / (p.sigma * p.sigma) + 1.0 / (p.omega_big * p.omega_big));
    d.position_ratio = std::sqrt(m.var1) / quoted_x;
    d.wavevector_ratio = std::sqrt(s.var1) / quoted_k;

    const ComplexField2D numeric = propagate_numeric(source, p, p.dist_source_slit, exec);
    const GaussianBiphoton gb = propagate_analytic(p, p.dist_source_slit);
    const ComplexField2D closed = sample_gaussian(gb, *g, *g, BoundaryCheck::Allow, exec);

    const auto nn = static_cast<std::ptrdiff_t>(g->n);
    std::vector<double> peak_row(g->n, 0.0), err_row(g->n, 0.0);
    for_rows(exec, nn, [&](std::ptrdiff_t ii) {
        const auto i = static_cast<std::size_t>(ii);
        double pk = 0.0, er = 0.0;
        for (std::size_t j = 0; j < g->n; ++j) {
            pk = std::max(pk, std::abs(closed.at(i, j)));
            er = std::max(er, std::abs(numeric.at(i, j) - closed.at(i, j)));
        }
        peak_row[i] = pk;
        err_row[i] = er;
    });
    const double peak = *std::max_element(peak_row.begin(), peak_row.end());
    const double err = *std::max_element(err_row.begin(), err_row.end());
    d.gaussian_crosscheck_peak_err = peak > 0.0 ? err / peak : 0.0;
    d.norm_drift = std::abs(norm2(numeric, exec) / source_norm - 1.0);
    return d;
}

Report run_scenario(const ScenarioSpec& spec) {
    const ExperimentParams& p = spec.params;
    stage("parameter validation", [&] { p.validate(); });

    const bool wants_nonlocal = spec.kind == ScenarioKind::NonlocalCoincidence;
    if (wants_nonlocal != (p.scenario == ScenarioGeometry::Nonlocal)) {
        fail(ErrorCode::ConfigError,
             "scenario '" + scenario_kind_name(spec.kind) + "' requires geometry '" +
                 (wants_nonlocal ? "nonlocal" : "colocated") + "', got '" +
                 scenario_geometry_name(p.scenario) + "'");
    }

    Report rep;
    rep.kind = spec.kind;
    rep.geometry_note = geometry_note_for(spec.kind);
    rep.params = p;
    rep.regime = regime_report(p);
    rep.terms = term_weights(p);

    if (spec.beam_diagnostics) {
        rep.beam = stage("beam diagnostics", [&] { return run_beam_diagnostics(p, spec.exec); });
    }

    const Grid1D slit_g =
        spec.slit_grid ? *spec.slit_grid : stage("slit grid", [&] { return auto_slit_grid(p); });
    const Grid1D screen_g = spec.screen_grid
                                ? *spec.screen_grid
                                : stage("screen grid", [&] { return auto_screen_grid(p); });

    // Slit plane. The state arrives via the closed-form evolution (the beam
    // diagnostics pin that form against the spectral propagator on a wide grid);
    // the window here only has to hold the slits, not the beam, so case weights
    // are taken against the full-plane mass of 1.
    const DoubleSlitMask mask = stage("mask construction",
                                      [&] { return DoubleSlitMask(p.slit_sep, p.slit_width); });
    const ComplexField2D at_slit = stage("slit-plane sampling", [&] {
        const GaussianBiphoton gb = propagate_analytic(p, p.dist_source_slit);
        return sample_gaussian(gb, slit_g, slit_g, BoundaryCheck::Allow, spec.exec);
    });
    rep.slit.grid = slit_g;
    rep.slit.window_norm2 = norm2(at_slit, spec.exec);
    rep.slit.weights =
        stage("slit case weights", [&] { return case_weights(at_slit, mask, 1.0, spec.exec); });
    const ComplexField2D masked =
        stage("slit truncation", [&] { return apply_mask(at_slit, mask, spec.exec); });
    rep.slit.transmitted_fraction = norm2(masked, spec.exec);

    // Screen. One kernel-quadrature flight, then the recorded slice next to the
    // closed forms on the same axis.
    const ComplexField2D at_screen = stage("screen propagation", [&] {
        return fresnel_to_grid(masked, p, p.dist_slit_screen, screen_g, screen_g, spec.exec);
    });

    const bool conditional = spec.kind == ScenarioKind::ConditionalSingle;
    rep.screen.grid = screen_g;
    rep.screen.oracle = stage("screen slice", [&] {
        return conditional ? conditional_slice(at_screen, 0.0, Provenance::NumericOracle,
                                               "conditional_oracle")
                           : diagonal_slice(at_screen, Provenance::NumericOracle,
                                            "coincidence_oracle");
    });
    rep.screen.law = conditional ? conditional_pattern(screen_g, rep.terms)
                                 : coincidence_pattern(screen_g, rep.terms);
    rep.screen.four_term = conditional ? four_term_conditional_pattern(screen_g, rep.terms)
                                       : four_term_coincidence_pattern(screen_g, rep.terms);

    rep.screen.oracle_metrics =
        stage("fringe metrics (recorded)", [&] { return fringe_metrics(rep.screen.oracle); });
    rep.screen.law_metrics =
        stage("fringe metrics (law)", [&] { return fringe_metrics(rep.screen.law); });
    rep.screen.four_term_metrics =
        stage("fringe metrics (four-term)", [&] { return fringe_metrics(rep.screen.four_term); });
    rep.screen.law_vs_oracle =
        stage("pattern comparison", [&] { return compare(rep.screen.law, rep.screen.oracle); });
    rep.screen.four_term_vs_law =
        stage("pattern comparison", [&] { return compare(rep.screen.law, rep.screen.four_term); });
    rep.screen.oracle_asymmetry = mirror_asymmetry(rep.screen.oracle);
    rep.screen.law_asymmetry = mirror_asymmetry(rep.screen.law);
    rep.screen.four_term_asymmetry = mirror_asymmetry(rep.screen.four_term);
    return rep;
}

SweepReport run_sweep(const ScenarioSpec& base, const SweepRequest& request, int jobs) {
    {
        ExperimentParams probe = base.params;
        if (sweep_target(probe, request.param) == nullptr) {
            fail(ErrorCode::SweepError,
                 "unknown sweep parameter '" + request.param +
                     "' (expected sigma, omega_big, slit_sep, slit_width, dist_source_slit, "
                     "dist_slit_screen)");
        }
    }
    if (request.values.size() < 2) {
        fail(ErrorCode::SweepError, "a sweep needs at least 2 values, got " +
                                        std::to_string(request.values.size()));
    }

    SweepReport rep;
    rep.kind = base.kind;
    rep.param = request.param;
    rep.points.resize(request.values.size());

    const int workers =
        std::clamp<int>(jobs, 1, static_cast<int>(request.values.size()));
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= request.values.size()) break;
            SweepPoint& pt = rep.points[i];
            pt.value = request.values[i];
            ScenarioSpec point_spec = base;
            *sweep_target(point_spec.params, request.param) = pt.value;
            // Concurrency lives across points when several workers run; the
            // kernels themselves give identical bits either way.
            if (workers > 1) point_spec.exec = Exec::Serial;
            try {
                pt.report = run_scenario(point_spec);
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return rep;
}

}  // namespace biphoton

#include "biphoton/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/field.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/propagation.hpp"
#include "biphoton/report_io.hpp"
#include "biphoton/scenario.hpp"

namespace biphoton {

namespace {

std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::string pct(double ratio) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g%%", 100.0 * std::abs(ratio - 1.0));
  return buf;
}

struct Gate {
  std::ostream& os;
  int failures = 0;

  void line(int idx, const std::string& name, bool ok,
            const std::string& detail) {
    os << (ok ? "[PASS] " : "[FAIL] ") << idx << ". " << name << ": " << detail
       << "\n";
    if (!ok) ++failures;
  }
  void info(const std::string& text) { os << "       " << text << "\n"; }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() ||
          std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool within(double value, double target, double rel_tol) {
  return std::abs(value - target) <= rel_tol * std::abs(target);
}

}  // namespace

int run_acceptance(std::ostream& os, Exec exec) {
  Gate g{os};

  const ExperimentParams defaults{};
  ExperimentParams tight = defaults;
  tight.dist_source_slit = 0.5;

  const double pair_spacing =
      defaults.lambda * defaults.dist_slit_screen / (2.0 * defaults.slit_sep);
  const double cond_spacing = 2.0 * pair_spacing;

  os << "reproduction criteria, defaults: lambda=" << fmt(defaults.lambda)
     << " sigma=" << fmt(defaults.sigma) << " omega=" << fmt(defaults.omega_big)
     << " slit_sep=" << fmt(defaults.slit_sep)
     << " slit_width=" << fmt(defaults.slit_width)
     << " source-slit=" << fmt(defaults.dist_source_slit)
     << " slit-screen=" << fmt(defaults.dist_slit_screen) << "\n";

  const FinalStateTerms terms_default = term_weights(defaults);
  const FinalStateTerms terms_tight = term_weights(tight);
  g.info("cross-slit amplitude weight is " + fmt(terms_default.weight_diff) +
         " at the default source-slit distance and " +
         fmt(terms_tight.weight_diff) + " at " +
         fmt(tight.dist_source_slit) +
         "; the half-period pair law needs that weight negligible, so the");
  g.info("recorded-pattern halves of criteria 1 and 4 run at source-slit " +
         fmt(tight.dist_source_slit) +
         " and default-distance values are reported for contrast");

  ScenarioSpec spec_bi{ScenarioKind::BiphotonCoincidence, defaults};
  spec_bi.exec = exec;
  const Report rep_bi = run_scenario(spec_bi);

  ScenarioSpec spec_cond{ScenarioKind::ConditionalSingle, defaults};
  spec_cond.beam_diagnostics = false;
  spec_cond.exec = exec;
  const Report rep_cond = run_scenario(spec_cond);

  ExperimentParams nl_params = defaults;
  nl_params.scenario = ScenarioGeometry::Nonlocal;
  ScenarioSpec spec_nl{ScenarioKind::NonlocalCoincidence, nl_params};
  spec_nl.beam_diagnostics = false;
  spec_nl.exec = exec;
  const Report rep_nl = run_scenario(spec_nl);

  ScenarioSpec spec_tight{ScenarioKind::BiphotonCoincidence, tight};
  spec_tight.beam_diagnostics = false;
  spec_tight.exec = exec;
  const Report rep_tight = run_scenario(spec_tight);

  ScenarioSpec spec_tight_cond{ScenarioKind::ConditionalSingle, tight};
  spec_tight_cond.beam_diagnostics = false;
  spec_tight_cond.exec = exec;
  const Report rep_tight_cond = run_scenario(spec_tight_cond);

  // 1. Pair detections a half wavelength-scale period apart: lambda D / 2d.
  {
    const double law = rep_bi.screen.law_metrics.spacing;
    const double rec = rep_tight.screen.oracle_metrics.spacing;
    const bool ok = within(law, pair_spacing, 0.01) && within(rec, pair_spacing, 0.02);
    g.line(1, "pair fringe spacing lambda*D/(2d)", ok,
           "law " + fmt(law) + " (" + pct(law / pair_spacing) +
               " off), recorded " + fmt(rec) + " (" + pct(rec / pair_spacing) +
               " off, source-slit " + fmt(tight.dist_source_slit) + ")");
    g.info("recorded spacing at the default source-slit distance is " +
           fmt(rep_bi.screen.oracle_metrics.spacing) +
           ": the surviving cross-slit amplitude restores the single-photon "
           "period there");
  }

  // 2. Conditional singles at twice the pair period: lambda D / d.
  {
    const double law = rep_cond.screen.law_metrics.spacing;
    const double rec = rep_cond.screen.oracle_metrics.spacing;
    const double ratio_law = law / rep_bi.screen.law_metrics.spacing;
    const double ratio_rec = rep_tight_cond.screen.oracle_metrics.spacing /
                             rep_tight.screen.oracle_metrics.spacing;
    const bool ok = within(law, cond_spacing, 0.01) &&
                    within(rec, cond_spacing, 0.02) &&
                    ratio_law > 1.95 && ratio_law < 2.05 &&
                    ratio_rec > 1.95 && ratio_rec < 2.05;
    g.line(2, "conditional fringe spacing lambda*D/d", ok,
           "law " + fmt(law) + ", recorded " + fmt(rec) +
               ", conditional/pair ratio law " + fmt(ratio_law) +
               ", recorded " + fmt(ratio_rec) + " (both at source-slit " +
               fmt(tight.dist_source_slit) + " for the recorded ratio)");
  }

  // 3. Colocated and mirrored-arm arrangements give identical patterns.
  {
    const bool bits = same_bits(rep_bi.screen.oracle.density,
                                rep_nl.screen.oracle.density) &&
                      same_bits(rep_bi.screen.law.density,
                                rep_nl.screen.law.density) &&
                      same_bits(rep_bi.screen.four_term.density,
                                rep_nl.screen.four_term.density);
    const bool csv = csv_text(rep_bi.screen.law, rep_bi.screen.oracle) ==
                     csv_text(rep_nl.screen.law, rep_nl.screen.oracle);
    g.line(3, "nonlocal arrangement equivalence", bits && csv,
           std::string("recorded, law and four-term densities ") +
               (bits ? "bitwise identical" : "DIFFER") + ", csv output " +
               (csv ? "byte-identical" : "DIFFERS"));
  }

  // 4. Closed-form law against the recorded pattern over the central fringes.
  {
    const double l2_tight =
        l2_error_window(rep_tight.screen.law, rep_tight.screen.oracle, -300.0, 300.0);
    const double l2_default =
        l2_error_window(rep_bi.screen.law, rep_bi.screen.oracle, -300.0, 300.0);
    const bool ok = l2_tight < 0.05;
    g.line(4, "pair law matches recorded pattern", ok,
           "relative l2 error " + fmt(l2_tight) + " over |x| <= 300 at source-slit " +
               fmt(tight.dist_source_slit) + " (tolerance 0.05)");
    g.info("same measure at the default source-slit distance: " +
           fmt(l2_default) + " (the law drops the cross-slit terms, the "
           "recorded pattern keeps them)");
  }

  // 5. Spectral flight over L in one hop equals 40 then 60, norm preserved.
  {
    bool ok = false;
    std::string detail;
    const auto bg = auto_beam_grid(defaults);
    if (!bg) {
      detail = "no feasible beam grid at defaults";
    } else {
      const ComplexField2D f0 =
          sample_gepr(defaults, *bg, *bg, BoundaryCheck::Allow, exec);
      const double n0 = norm2(f0, exec);
      ComplexField2D two_hop = propagate_numeric(f0, defaults, 40.0, exec);
      two_hop = propagate_numeric(two_hop, defaults, 60.0, exec);
      const ComplexField2D one_hop = propagate_numeric(f0, defaults, 100.0, exec);
      const double drift = std::max(std::abs(norm2(two_hop, exec) / n0 - 1.0),
                                    std::abs(norm2(one_hop, exec) / n0 - 1.0));
      double peak = 0.0;
      for (const cplx& a : one_hop.amp) peak = std::max(peak, std::abs(a));
      double diff = 0.0;
      for (std::size_t i = 0; i < one_hop.amp.size(); ++i)
        diff = std::max(diff, std::abs(one_hop.amp[i] - two_hop.amp[i]));
      const double rel = diff / peak;
      ok = drift <= 1e-10 && rel <= 1e-10;
      detail = "norm drift " + fmt(drift, 3) + ", 40+60 vs 100 max node error " +
               fmt(rel, 3) + " of peak (tolerance 1e-10, grid " +
               std::to_string(bg->n) + "^2)";
    }
    g.line(5, "free flight composes and conserves norm", ok, detail);
  }

  // 6. Spectral propagator against the closed-form Gaussian at the slit plane.
  {
    const bool ran = rep_bi.beam && rep_bi.beam->ran;
    const double err = ran ? rep_bi.beam->gaussian_crosscheck_peak_err : 1.0;
    g.line(6, "propagated state matches closed form", ran && err < 1e-6,
           ran ? "max node error " + fmt(err, 3) +
                     " of peak over the slit-plane flight (tolerance 1e-6)"
               : "beam diagnostics did not run: " +
                     (rep_bi.beam ? rep_bi.beam->note : std::string("absent")));
  }

  // 7. sigma == omega factorizes: no correlation left in the source state.
  {
    ExperimentParams pp = defaults;
    pp.sigma = pp.omega_big;
    const auto gp = auto_beam_grid(pp);
    bool ok = false;
    std::string detail;
    if (!gp) {
      detail = "no feasible grid";
    } else {
      const ComplexField2D f =
          sample_gepr(pp, *gp, *gp, BoundaryCheck::Allow, exec);
      const double nrm = norm2(f, exec);
      const Moments m = moments(f, exec);
      const Grid1D& gr = *gp;
      const double dx = gr.dx();
      // Marginals of the window-normalized joint density.
      std::vector<double> m1(gr.n, 0.0), m2(gr.n, 0.0);
      for (std::size_t i = 0; i < gr.n; ++i)
        for (std::size_t j = 0; j < gr.n; ++j) {
          const double dens = std::norm(f.at(i, j)) / nrm;
          m1[i] += dens * dx;
          m2[j] += dens * dx;
        }
      double worst = 0.0;
      for (std::size_t i = 0; i < gr.n; ++i) {
        if (std::abs(gr.node(i)) > pp.sigma) continue;
        for (std::size_t j = 0; j < gr.n; ++j) {
          if (std::abs(gr.node(j)) > pp.sigma) continue;
          const double joint = std::norm(f.at(i, j)) / nrm;
          worst = std::max(worst, std::abs(joint - m1[i] * m2[j]) / joint);
        }
      }
      ok = std::abs(m.cov) <= 1e-8 && worst <= 1e-6;
      detail = "covariance " + fmt(m.cov, 3) + " (tolerance 1e-8), joint vs "
               "marginal product max relative error " + fmt(worst, 3) +
               " for |x| <= sigma (tolerance 1e-6), sigma=omega=" +
               fmt(pp.sigma);
    }
    g.line(7, "equal widths factorize the state", ok, detail);
  }

  // 8. Cross-slit weight grows with sigma once the slit plane is close enough
  //    that free flight cannot smear the correlation.
  {
    ExperimentParams p8 = defaults;
    p8.dist_source_slit = 0.05;
    ScenarioSpec base{ScenarioKind::BiphotonCoincidence, p8};
    base.beam_diagnostics = false;
    base.exec = exec;
    SweepRequest req{"sigma", {0.1, 0.5, 1.0, 5.0, 50.0}};
    const SweepReport sweep = run_sweep(base, req, 1);
    bool all_ran = true;
    std::vector<double> ratios;
    std::string ratio_text;
    for (const SweepPoint& pt : sweep.points) {
      if (!pt.report) {
        all_ran = false;
        ratio_text += (ratio_text.empty() ? "" : ", ") + ("error: " + pt.error);
        continue;
      }
      const SlitCaseWeights& w = pt.report->slit.weights;
      const double r = w.p_same > 0.0 ? w.p_diff / w.p_same : 0.0;
      ratios.push_back(r);
      ratio_text += (ratio_text.empty() ? "" : ", ") + fmt(r, 3);
    }
    bool monotone = all_ran && ratios.size() == req.values.size();
    if (monotone)
      for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
        if (ratios[i] > ratios[i + 1] * (1.0 + 1e-9)) monotone = false;
    const bool small_start = monotone && ratios.front() < 1e-3;
    g.line(8, "cross-slit weight rises with sigma", monotone && small_start,
           "p_diff/p_same over sigma {0.1, 0.5, 1, 5, 50} at source-slit " +
               fmt(p8.dist_source_slit) + ": " + ratio_text +
               (monotone ? " (non-decreasing" : " (NOT monotone") +
               ", first < 1e-3 required)");
  }

  // 9. Patterns are mirror symmetric about the optical axis.
  {
    double law_ft = 0.0, oracle = 0.0;
    for (const Report* r : {&rep_bi, &rep_cond, &rep_nl, &rep_tight}) {
      law_ft = std::max({law_ft, r->screen.law_asymmetry,
                         r->screen.four_term_asymmetry});
      oracle = std::max(oracle, r->screen.oracle_asymmetry);
    }
    const bool ok = law_ft <= 1e-10 && oracle <= 1e-6;
    g.line(9, "mirror symmetry of every pattern", ok,
           "closed forms " + fmt(law_ft, 3) + " of peak (tolerance 1e-10), "
           "recorded " + fmt(oracle, 3) + " (tolerance 1e-6), worst of 4 runs");
  }

  // 10. Measured source spreads sit at a fixed multiple of the quoted widths
  //     across parameter points: half in position, double in wave vector.
  {
    struct AuditPoint {
      double sigma, omega;
    };
    const std::vector<AuditPoint> pts = {{0.5, 50.0}, {1.0, 50.0}, {2.0, 40.0}};
    std::vector<double> rx, rk;
    std::string note;
    bool all_ran = true;
    for (const AuditPoint& ap : pts) {
      if (rep_bi.beam && rep_bi.beam->ran && ap.sigma == defaults.sigma &&
          ap.omega == defaults.omega_big) {
        rx.push_back(rep_bi.beam->position_ratio);
        rk.push_back(rep_bi.beam->wavevector_ratio);
        continue;
      }
      ExperimentParams p10 = defaults;
      p10.sigma = ap.sigma;
      p10.omega_big = ap.omega;
      const BeamDiagnostics b = run_beam_diagnostics(p10, exec);
      if (!b.ran) {
        all_ran = false;
        note = b.note;
        break;
      }
      rx.push_back(b.position_ratio);
      rk.push_back(b.wavevector_ratio);
    }
    bool ok = all_ran;
    double sx = 0.0, sk = 0.0;
    if (ok) {
      const auto [xmin, xmax] = std::minmax_element(rx.begin(), rx.end());
      const auto [kmin, kmax] = std::minmax_element(rk.begin(), rk.end());
      sx = *xmax / *xmin - 1.0;
      sk = *kmax / *kmin - 1.0;
      ok = sx < 0.01 && sk < 0.01;
    }
    g.line(10, "spread ratios constant across sources", ok,
           all_ran ? "measured/quoted position ratio " + fmt(rx[0]) +
                         " (spread " + fmt(sx, 3) + "), wave-vector ratio " +
                         fmt(rk[0]) + " (spread " + fmt(sk, 3) +
                         ") over 3 (sigma, omega) points, tolerance 1%"
                   : "beam diagnostics skipped: " + note);
  }

  os << "acceptance: " << (10 - g.failures) << "/10 criteria passed\n";
  return g.failures;
}

}  // namespace biphoton

#include "biphoton/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

using ordered_json = nlohmann::ordered_json;

// Locale-independent float formatting; files must not depend on LC_NUMERIC.
std::string to_scientific(double v, int precision) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::scientific, precision);
  return std::string(buf, res.ptr);
}

std::string to_fixed(double v, int precision) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                           precision);
  return std::string(buf, res.ptr);
}

std::string to_general(double v, int precision) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

ordered_json grid_json(const Grid1D& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n", g.n}, {"dx", g.dx()}};
}

ordered_json metrics_json(const FringeMetrics& m) {
  return {{"spacing", m.spacing},
          {"visibility", m.visibility},
          {"n_peaks_used", m.n_peaks_used},
          {"envelope_halfwidth", m.envelope_halfwidth}};
}

ordered_json comparison_json(const PatternComparison& c) {
  return {{"l2_err", c.l2_err},
          {"max_err", c.max_err},
          {"spacing_ratio", c.spacing_ratio},
          {"visibility_diff", c.visibility_diff}};
}

ordered_json pattern_json(const Pattern& p, const FringeMetrics& m,
                          double asymmetry) {
  return {{"label", p.label},
          {"provenance", provenance_name(p.provenance)},
          {"metrics", metrics_json(m)},
          {"mirror_asymmetry", asymmetry}};
}

ordered_json params_json(const ExperimentParams& p) {
  return {{"lambda", p.lambda},
          {"sigma", p.sigma},
          {"omega_big", p.omega_big},
          {"slit_sep", p.slit_sep},
          {"slit_width", p.slit_width},
          {"dist_source_slit", p.dist_source_slit},
          {"dist_slit_screen", p.dist_slit_screen},
          {"scenario", scenario_geometry_name(p.scenario)}};
}

ordered_json report_json(const Report& r) {
  const ExperimentParams& p = r.params;
  ordered_json j;
  j["schema_version"] = 1;
  j["scenario"] = scenario_kind_name(r.kind);
  j["geometry_note"] = r.geometry_note;
  j["params"] = params_json(p);
  j["derived"] = {
      {"k0", p.k0()},
      {"alpha_slit_plane", p.alpha()},
      {"alpha_screen", p.alpha_for(p.dist_slit_screen)},
      {"pair_fringe_spacing",
       p.lambda * p.dist_slit_screen / (2.0 * p.slit_sep)},
      {"conditional_fringe_spacing",
       p.lambda * p.dist_slit_screen / p.slit_sep},
      {"envelope_first_zero",
       p.lambda * p.dist_slit_screen / (2.0 * p.slit_width)},
  };

  ordered_json checks = ordered_json::array();
  for (const RegimeCheck& c : r.regime.checks) {
    checks.push_back(
        {{"name", c.name}, {"value", c.value}, {"ok", c.ok}, {"note", c.note}});
  }
  j["regime"] = {{"all_ok", r.regime.all_ok},
                 {"entangled", r.regime.entangled},
                 {"checks", checks}};

  j["term_weights"] = {
      {"same_slit", r.terms.weight_same},
      {"diff_slit", r.terms.weight_diff},
      {"diff_over_same", r.terms.weight_diff / r.terms.weight_same},
      {"prefactor_modulus", std::abs(r.terms.prefactor)},
  };

  if (r.beam && r.beam->ran) {
    const BeamDiagnostics& b = *r.beam;
    ordered_json bj;
    if (b.grid) bj["grid"] = grid_json(*b.grid);
    bj["position_ratio"] = b.position_ratio;
    bj["wavevector_ratio"] = b.wavevector_ratio;
    bj["gaussian_crosscheck_peak_err"] = b.gaussian_crosscheck_peak_err;
    bj["norm_drift"] = b.norm_drift;
    j["beam_diagnostics"] = bj;
  } else {
    j["beam_diagnostics"] = nullptr;
    if (r.beam && !r.beam->note.empty())
      j["beam_diagnostics_skipped"] = r.beam->note;
  }

  const SlitStage& s = r.slit;
  j["slit_stage"] = {
      {"grid", grid_json(s.grid)},
      {"window_norm2", s.window_norm2},
      {"transmitted_fraction", s.transmitted_fraction},
      {"case_weights",
       {{"p_same", s.weights.p_same},
        {"p_diff", s.weights.p_diff},
        {"p_blocked", s.weights.p_blocked},
        {"diff_over_same", s.weights.p_same > 0.0
                               ? s.weights.p_diff / s.weights.p_same
                               : 0.0},
        {"p_same_rq", s.weights.p_same_rq},
        {"p_diff_rq", s.weights.p_diff_rq},
        {"partitions_disagree", s.weights.partitions_disagree}}},
  };

  const ScreenStage& sc = r.screen;
  j["screen_stage"] = {
      {"grid", grid_json(sc.grid)},
      {"patterns",
       {{"oracle", pattern_json(sc.oracle, sc.oracle_metrics,
                                sc.oracle_asymmetry)},
        {"law", pattern_json(sc.law, sc.law_metrics, sc.law_asymmetry)},
        {"four_term", pattern_json(sc.four_term, sc.four_term_metrics,
                                   sc.four_term_asymmetry)}}},
      {"comparisons",
       {{"law_vs_oracle", comparison_json(sc.law_vs_oracle)},
        {"four_term_vs_law", comparison_json(sc.four_term_vs_law)}}},
  };
  return j;
}

// Headline numbers for one sweep point, small enough to scan across a table.
ordered_json sweep_point_summary(const Report& r) {
  return {
      {"spacing_law", r.screen.law_metrics.spacing},
      {"spacing_oracle", r.screen.oracle_metrics.spacing},
      {"visibility_oracle", r.screen.oracle_metrics.visibility},
      {"l2_law_vs_oracle", r.screen.law_vs_oracle.l2_err},
      {"p_same", r.slit.weights.p_same},
      {"p_diff", r.slit.weights.p_diff},
      {"transmitted_fraction", r.slit.transmitted_fraction},
  };
}

// Step sizes of 1, 2 or 5 times a power of ten, close to range / target.
double nice_step(double range, int target) {
  const double raw = range / static_cast<double>(target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

void append_polyline(std::string& out, const Grid1D& axis,
                     const std::vector<double>& y, double x_lo, double x_scale,
                     double y_hi, double y_scale, double px0, double py0,
                     const char* style) {
  out += "<polyline fill=\"none\" ";
  out += style;
  out += " points=\"";
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double px = px0 + (axis.node(i) - x_lo) * x_scale;
    const double py = py0 + (y_hi - y[i]) * y_scale;
    if (i) out += ' ';
    out += to_fixed(px, 2);
    out += ',';
    out += to_fixed(py, 2);
  }
  out += "\"/>\n";
}

std::string point_dir_name(const SweepReport& sweep, std::size_t index) {
  char idx[8];
  std::snprintf(idx, sizeof(idx), "%02zu", index);
  return sweep.param + "_" + idx + "_" +
         to_general(sweep.points[index].value, 6);
}

}  // namespace

std::string csv_text(const Pattern& analytic, const Pattern& numeric) {
  if (!(analytic.axis == numeric.axis))
    fail(ErrorCode::GridMismatch, "csv columns must share one screen axis");
  std::string out = "x,density_analytic,density_numeric\n";
  out.reserve(out.size() + analytic.axis.n * 60);
  for (std::size_t i = 0; i < analytic.axis.n; ++i) {
    out += to_scientific(analytic.axis.node(i), 12);
    out += ',';
    out += to_scientific(analytic.density[i], 12);
    out += ',';
    out += to_scientific(numeric.density[i], 12);
    out += '\n';
  }
  return out;
}

std::string svg_text(const Pattern& analytic, const Pattern& numeric,
                     const std::string& title) {
  if (!(analytic.axis == numeric.axis))
    fail(ErrorCode::GridMismatch, "svg series must share one screen axis");
  const Grid1D& axis = analytic.axis;

  const double width = 960.0, height = 560.0;
  const double px0 = 80.0, py0 = 56.0, px1 = 920.0, py1 = 492.0;

  const double x_lo = axis.x_min, x_hi = axis.x_max;
  double y_hi = 0.0;
  for (double v : analytic.density) y_hi = std::max(y_hi, v);
  for (double v : numeric.density) y_hi = std::max(y_hi, v);
  if (y_hi <= 0.0) fail(ErrorCode::ZeroNorm, "svg series carry no density");
  y_hi *= 1.08;

  const double x_scale = (px1 - px0) / (x_hi - x_lo);
  const double y_scale = (py1 - py0) / y_hi;

  std::string s;
  s.reserve(64 * 1024);
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"560\" "
       "viewBox=\"0 0 960 560\" font-family=\"monospace\">\n";
  s += "<rect width=\"960\" height=\"560\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"480\" y=\"30\" text-anchor=\"middle\" font-size=\"17\" "
       "fill=\"#1c1c1c\">" + title + "</text>\n";

  // Axes box.
  s += "<rect x=\"" + to_fixed(px0, 2) + "\" y=\"" + to_fixed(py0, 2) +
       "\" width=\"" + to_fixed(px1 - px0, 2) + "\" height=\"" +
       to_fixed(py1 - py0, 2) + "\" fill=\"none\" stroke=\"#444444\"/>\n";

  // Vertical gridlines and x tick labels.
  const double xs = nice_step(x_hi - x_lo, 8);
  for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
    const double px = px0 + (t - x_lo) * x_scale;
    s += "<line x1=\"" + to_fixed(px, 2) + "\" y1=\"" + to_fixed(py0, 2) +
         "\" x2=\"" + to_fixed(px, 2) + "\" y2=\"" + to_fixed(py1, 2) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + to_fixed(px, 2) + "\" y=\"" + to_fixed(py1 + 20.0, 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333333\">" +
         to_general(std::abs(t) < 1e-12 * xs ? 0.0 : t, 6) + "</text>\n";
  }
  // Horizontal gridlines and y tick labels.
  const double ys = nice_step(y_hi, 5);
  for (double t = 0.0; t <= y_hi + 1e-9 * ys; t += ys) {
    const double py = py0 + (y_hi - t) * y_scale;
    s += "<line x1=\"" + to_fixed(px0, 2) + "\" y1=\"" + to_fixed(py, 2) +
         "\" x2=\"" + to_fixed(px1, 2) + "\" y2=\"" + to_fixed(py, 2) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + to_fixed(px0 - 8.0, 2) + "\" y=\"" +
         to_fixed(py + 4.0, 2) +
         "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333333\">" +
         to_general(t, 3) + "</text>\n";
  }

  s += "<text x=\"" + to_fixed((px0 + px1) / 2.0, 2) + "\" y=\"" +
       to_fixed(height - 14.0, 2) +
       "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1c1c1c\">"
       "detector coordinate x</text>\n";
  s += "<text x=\"22\" y=\"" + to_fixed((py0 + py1) / 2.0, 2) +
       "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#1c1c1c\" "
       "transform=\"rotate(-90 22 " + to_fixed((py0 + py1) / 2.0, 2) +
       ")\">probability density</text>\n";

  const char* style_analytic =
      "stroke=\"#1a6fb5\" stroke-width=\"1.6\"";
  const char* style_numeric =
      "stroke=\"#c23b22\" stroke-width=\"1.6\" stroke-dasharray=\"7 4\"";
  append_polyline(s, axis, analytic.density, x_lo, x_scale, y_hi, y_scale, px0,
                  py0, style_analytic);
  append_polyline(s, axis, numeric.density, x_lo, x_scale, y_hi, y_scale, px0,
                  py0, style_numeric);

  // Legend, top right inside the box.
  const double lx = px1 - 300.0, ly = py0 + 18.0;
  s += "<line x1=\"" + to_fixed(lx, 2) + "\" y1=\"" + to_fixed(ly, 2) +
       "\" x2=\"" + to_fixed(lx + 36.0, 2) + "\" y2=\"" + to_fixed(ly, 2) +
       "\" " + style_analytic + "/>\n";
  s += "<text x=\"" + to_fixed(lx + 44.0, 2) + "\" y=\"" + to_fixed(ly + 4.0, 2) +
       "\" font-size=\"12\" fill=\"#1c1c1c\">" + analytic.label +
       "</text>\n";
  s += "<line x1=\"" + to_fixed(lx, 2) + "\" y1=\"" + to_fixed(ly + 20.0, 2) +
       "\" x2=\"" + to_fixed(lx + 36.0, 2) + "\" y2=\"" + to_fixed(ly + 20.0, 2) +
       "\" " + style_numeric + "/>\n";
  s += "<text x=\"" + to_fixed(lx + 44.0, 2) + "\" y=\"" +
       to_fixed(ly + 24.0, 2) + "\" font-size=\"12\" fill=\"#1c1c1c\">" +
       numeric.label + "</text>\n";

  s += "</svg>\n";
  return s;
}

std::string report_json_text(const Report& report) {
  return report_json(report).dump(2) + "\n";
}

std::string sweep_json_text(const SweepReport& sweep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["scenario"] = scenario_kind_name(sweep.kind);
  j["sweep_param"] = sweep.param;
  ordered_json points = ordered_json::array();
  for (const SweepPoint& pt : sweep.points) {
    ordered_json pj;
    pj["value"] = pt.value;
    pj["ok"] = pt.report.has_value();
    if (pt.report)
      pj["summary"] = sweep_point_summary(*pt.report);
    else
      pj["error"] = pt.error;
    points.push_back(pj);
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

std::string sweep_summary_csv(const SweepReport& sweep) {
  std::string out =
      "value,ok,spacing_law,spacing_oracle,visibility_oracle,"
      "l2_law_vs_oracle,p_same,p_diff,transmitted_fraction,error\n";
  for (const SweepPoint& pt : sweep.points) {
    out += to_scientific(pt.value, 12);
    if (pt.report) {
      const Report& r = *pt.report;
      out += ",1,";
      out += to_scientific(r.screen.law_metrics.spacing, 12);
      out += ',';
      out += to_scientific(r.screen.oracle_metrics.spacing, 12);
      out += ',';
      out += to_scientific(r.screen.oracle_metrics.visibility, 12);
      out += ',';
      out += to_scientific(r.screen.law_vs_oracle.l2_err, 12);
      out += ',';
      out += to_scientific(r.slit.weights.p_same, 12);
      out += ',';
      out += to_scientific(r.slit.weights.p_diff, 12);
      out += ',';
      out += to_scientific(r.slit.transmitted_fraction, 12);
      out += ",\n";
    } else {
      std::string msg = pt.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out += ",0,,,,,,,," + msg + "\n";
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorCode::ConfigError, "cannot open " + tmp.string());
    os.write(content.data(),
             static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) fail(ErrorCode::ConfigError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    fail(ErrorCode::ConfigError,
         "cannot move " + tmp.string() + " into place: " + ec.message());
}

std::vector<std::filesystem::path> write_report_files(
    const Report& report, const std::filesystem::path& dir,
    const OutputOptions& outputs) {
  std::filesystem::create_directories(dir);
  const std::string base = scenario_kind_name(report.kind);
  std::vector<std::filesystem::path> written;
  if (outputs.csv) {
    const auto p = dir / (base + ".csv");
    write_file_atomic(p, csv_text(report.screen.law, report.screen.oracle));
    written.push_back(p);
  }
  if (outputs.svg) {
    const auto p = dir / (base + ".svg");
    write_file_atomic(
        p, svg_text(report.screen.law, report.screen.oracle, base));
    written.push_back(p);
  }
  if (outputs.report) {
    const auto p = dir / (base + ".report.json");
    write_file_atomic(p, report_json_text(report));
    written.push_back(p);
  }
  return written;
}

std::vector<std::filesystem::path> write_sweep_files(
    const SweepReport& sweep, const std::filesystem::path& dir,
    const OutputOptions& outputs) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    const SweepPoint& pt = sweep.points[i];
    const std::filesystem::path sub = dir / point_dir_name(sweep, i);
    if (pt.report) {
      auto files = write_report_files(*pt.report, sub, outputs);
      written.insert(written.end(), files.begin(), files.end());
    } else {
      std::filesystem::create_directories(sub);
      ordered_json ej = {{"value", pt.value}, {"error", pt.error}};
      const auto p = sub / "error.json";
      write_file_atomic(p, ej.dump(2) + "\n");
      written.push_back(p);
    }
  }
  const auto pj = dir / "sweep_summary.json";
  write_file_atomic(pj, sweep_json_text(sweep));
  written.push_back(pj);
  const auto pc = dir / "sweep_summary.csv";
  write_file_atomic(pc, sweep_summary_csv(sweep));
  written.push_back(pc);
  return written;
}

}  // namespace biphoton

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "biphoton/scenario.hpp"

namespace biphoton {

/// Which files a run writes. All three default on.
struct OutputOptions {
  bool csv = true;
  bool svg = true;
  bool report = true;
};

/// Two patterns side by side, one row per screen node.
/// Header "x,density_analytic,density_numeric", values as %.12e.
/// Both patterns must share the same axis grid.
std::string csv_text(const Pattern& analytic, const Pattern& numeric);

/// Self-contained SVG plot of the two densities over the screen axis.
/// Analytic curve solid, numeric oracle dashed.
std::string svg_text(const Pattern& analytic, const Pattern& numeric,
                     const std::string& title);

/// Full run report as a JSON document (schema_version 1).
std::string report_json_text(const Report& report);

/// Sweep results as a JSON document: one entry per point, with the
/// headline numbers or the recorded error.
std::string sweep_json_text(const SweepReport& sweep);

/// One-line-per-point sweep summary table.
std::string sweep_summary_csv(const SweepReport& sweep);

/// Writes content to path via a temp file in the same directory plus an
/// atomic rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Writes the selected outputs for one run into dir, named after the
/// scenario kind. Returns the paths written, in write order.
std::vector<std::filesystem::path> write_report_files(
    const Report& report, const std::filesystem::path& dir,
    const OutputOptions& outputs);

/// Writes per-point subdirectories plus sweep_summary.json / .csv.
/// Failed points get a small JSON file recording the error.
std::vector<std::filesystem::path> write_sweep_files(
    const SweepReport& sweep, const std::filesystem::path& dir,
    const OutputOptions& outputs);

}  // namespace biphoton

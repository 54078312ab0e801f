#pragma once

#include <string>
#include <vector>

#include "biphoton/grid.hpp"

namespace biphoton {

enum class Provenance { Analytic, NumericOracle };

const char* provenance_name(Provenance p);

/// 1D detection-probability density sampled on a grid, normalized so the midpoint
/// quadrature over the window is 1. Patterns are always window-relative: tails
/// outside the window are not part of the normalization.
struct Pattern {
  Grid1D axis;
  std::vector<double> density;
  Provenance provenance = Provenance::Analytic;
  std::string label;
};

/// Normalizes raw non-negative samples into a Pattern; throws ZeroNorm when the
/// samples carry no mass and GridMismatch when sizes disagree.
Pattern make_pattern(const Grid1D& axis, std::vector<double> raw, Provenance provenance,
                     std::string label);

}  // namespace biphoton

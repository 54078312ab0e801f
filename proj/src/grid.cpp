#include "biphoton/grid.hpp"

#include <cmath>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D::Grid1D(double x_min_, double x_max_, std::size_t n_) : x_min(x_min_), x_max(x_max_), n(n_) {
  if (!(x_max > x_min))
    fail(ErrorCode::NonPositiveLength, "grid window [" + std::to_string(x_min) + ", " +
                                           std::to_string(x_max) + ") has non-positive length");
  if (!is_power_of_two(n))
    fail(ErrorCode::NonPositiveLength, "grid size " + std::to_string(n) + " is not a power of two");
}

Grid1D Grid1D::symmetric(double half_width, std::size_t n) {
  return Grid1D(-half_width, half_width, n);
}

Grid1D Grid1D::centered_on_zero(double dx, std::size_t n) {
  if (!(dx > 0.0)) fail(ErrorCode::NonPositiveLength, "grid spacing must be positive");
  const double half = static_cast<double>(n) / 2.0;
  return Grid1D(-(half + 0.5) * dx, (half - 0.5) * dx, n);
}

std::size_t Grid1D::nearest_node(double x) const {
  if (!(x >= x_min && x < x_max))
    fail(ErrorCode::OutOfRange,
         "x = " + std::to_string(x) + " outside grid window [" + std::to_string(x_min) + ", " +
             std::to_string(x_max) + ")");
  const double pos = (x - x_min) / dx() - 0.5;
  long m = std::lround(pos);
  if (m < 0) m = 0;
  if (m >= static_cast<long>(n)) m = static_cast<long>(n) - 1;
  return static_cast<std::size_t>(m);
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::OverlappingSlits: return "OverlappingSlits";
    case ErrorCode::GridTooNarrow: return "GridTooNarrow";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AliasingRisk: return "AliasingRisk";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::NonCompactSupport: return "NonCompactSupport";
    case ErrorCode::UnderResolvedSlit: return "UnderResolvedSlit";
    case ErrorCode::TooFewPeaks: return "TooFewPeaks";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::SweepError: return "SweepError";
  }
  return "UnknownError";
}

}  // namespace biphoton

#pragma once

#include <cstddef>

namespace biphoton {

/// Uniform 1D grid of n cell-centered nodes over [x_min, x_max):
/// node(m) = x_min + (m + 1/2) dx with dx = (x_max - x_min)/n, matching the
/// midpoint quadrature rule used throughout (each node owns one cell of width dx).
/// n must be a power of two so spectral transforms never need padding.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  Grid1D() = default;
  Grid1D(double x_min, double x_max, std::size_t n);

  /// Symmetric window [-half_width, half_width); 0 falls on a cell boundary,
  /// so geometry aligned to multiples of dx lands exactly between nodes.
  static Grid1D symmetric(double half_width, std::size_t n);

  /// Grid whose node m is (m - n/2) * dx; x = 0 is exactly a node. The window is
  /// [-(n/2 + 1/2) dx, (n/2 - 1/2) dx), half a cell off symmetric.
  static Grid1D centered_on_zero(double dx, std::size_t n);

  double dx() const { return (x_max - x_min) / static_cast<double>(n); }
  double node(std::size_t m) const { return x_min + (static_cast<double>(m) + 0.5) * dx(); }
  double length() const { return x_max - x_min; }

  /// Index of the node nearest to x; throws OutOfRange if x lies outside the window.
  std::size_t nearest_node(double x) const;

  bool operator==(const Grid1D& other) const = default;
};

bool is_power_of_two(std::size_t n);

}  // namespace biphoton

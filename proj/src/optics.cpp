#include "biphoton/optics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

DoubleSlitMask::DoubleSlitMask(double sep, double width) : slit_sep(sep), slit_width(width) {
  if (!(sep > 0.0) || !(width > 0.0))
    fail(ErrorCode::NonPositiveLength, "slit separation and width must be positive");
  if (width >= sep)
    fail(ErrorCode::OverlappingSlits, "slit_width = " + std::to_string(width) +
                                          " must be smaller than slit_sep = " +
                                          std::to_string(sep));
}

bool DoubleSlitMask::transmits(double x) const {
  const double half_sep = 0.5 * slit_sep;
  const double half_w = 0.5 * slit_width;
  return (std::abs(x - half_sep) <= half_w) || (std::abs(x + half_sep) <= half_w);
}

namespace {

std::vector<char> transmission_row(const DoubleSlitMask& mask, const Grid1D& g) {
  std::vector<char> t(g.n);
  std::size_t open = 0;
  for (std::size_t m = 0; m < g.n; ++m) {
    t[m] = mask.transmits(g.node(m)) ? 1 : 0;
    open += t[m];
  }
  // Two openings; each must cover at least 8 nodes for the hard edges to be usable.
  if (g.dx() > mask.slit_width / 8.0)
    fail(ErrorCode::UnderResolvedSlit,
         "grid spacing " + std::to_string(g.dx()) + " gives fewer than 8 nodes per opening of " +
             std::to_string(mask.slit_width));
  if (open < 16)
    fail(ErrorCode::UnderResolvedSlit,
         "openings centered at +-" + std::to_string(0.5 * mask.slit_sep) + " cover only " +
             std::to_string(open) + " nodes inside the grid window [" +
             std::to_string(g.x_min) + ", " + std::to_string(g.x_max) +
             "]; widen the slit grid");
  return t;
}

}  // namespace

ComplexField2D apply_mask(const ComplexField2D& f, const DoubleSlitMask& mask, Exec exec) {
  const std::vector<char> t1 = transmission_row(mask, f.grid1);
  const std::vector<char> t2 =
      f.grid1 == f.grid2 ? t1 : transmission_row(mask, f.grid2);
  ComplexField2D out(f.grid1, f.grid2);
  for_rows(exec, static_cast<std::ptrdiff_t>(f.grid1.n), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (!t1[i]) return;  // row stays zero
    for (std::size_t j = 0; j < f.grid2.n; ++j)
      if (t2[j]) out.at(i, j) = f.at(i, j);
  });
  return out;
}

SlitCaseWeights case_weights(const ComplexField2D& f, const DoubleSlitMask& mask,
                             double total_norm2, Exec exec) {
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  const double cell = f.grid1.dx() * f.grid2.dx();
  const double half_sep = 0.5 * mask.slit_sep;
  const double half_w = 0.5 * mask.slit_width;

  // Per-node slit labels along each axis: +1 / -1 for the openings, 0 blocked.
  auto labels = [&](const Grid1D& g) {
    std::vector<int> lab(g.n, 0);
    for (std::size_t m = 0; m < g.n; ++m) {
      const double x = g.node(m);
      if (std::abs(x - half_sep) <= half_w) lab[m] = +1;
      else if (std::abs(x + half_sep) <= half_w) lab[m] = -1;
    }
    return lab;
  };
  const std::vector<int> l1 = labels(f.grid1);
  const std::vector<int> l2 = f.grid1 == f.grid2 ? l1 : labels(f.grid2);

  double total = total_norm2;
  if (total < 0.0) total = norm2(f, exec);
  if (!(total > 0.0)) fail(ErrorCode::ZeroNorm, "case weights of a field with no mass");

  const double same = cell * sum_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (l1[i] == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < n2; ++j)
      if (l2[j] == l1[i]) acc += std::norm(f.at(i, j));
    return acc;
  });
  const double diff = cell * sum_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (l1[i] == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < n2; ++j)
      if (l2[j] == -l1[i]) acc += std::norm(f.at(i, j));
    return acc;
  });

  // Center-of-mass partition: rectangles in (r, q) rather than squares in (x1, x2).
  auto rq_mass = [&](double r_center, double q_center) {
    return cell * sum_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
      const auto i = static_cast<std::size_t>(ii);
      const double x1 = f.grid1.node(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n2; ++j) {
        const double x2 = f.grid2.node(j);
        const double r = 0.5 * (x1 + x2);
        const double q = 0.5 * (x1 - x2);
        if (std::abs(r - r_center) <= half_w && std::abs(q - q_center) <= half_w)
          acc += std::norm(f.at(i, j));
      }
      return acc;
    });
  };

  SlitCaseWeights w;
  w.p_same = same / total;
  w.p_diff = diff / total;
  w.p_blocked = 1.0 - w.p_same - w.p_diff;
  w.p_same_rq = (rq_mass(+half_sep, 0.0) + rq_mass(-half_sep, 0.0)) / total;
  w.p_diff_rq = (rq_mass(0.0, +half_sep) + rq_mass(0.0, -half_sep)) / total;
  w.partitions_disagree = std::abs(w.p_same - w.p_same_rq) > 1e-3 ||
                          std::abs(w.p_diff - w.p_diff_rq) > 1e-3;
  return w;
}

}  // namespace biphoton

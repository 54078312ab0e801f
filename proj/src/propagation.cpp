#include "biphoton/propagation.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/fft.hpp"

namespace biphoton {

namespace {

double dft_wavenumber(std::size_t j, std::size_t n, double dx) {
  const auto js = static_cast<double>(j < n / 2 ? static_cast<std::ptrdiff_t>(j)
                                                : static_cast<std::ptrdiff_t>(j) -
                                                      static_cast<std::ptrdiff_t>(n));
  return 2.0 * std::numbers::pi * js / (static_cast<double>(n) * dx);
}

/// Largest |spectrum| on the Nyquist row/column relative to the spectral peak.
double band_edge_fraction(const std::vector<cplx>& spec, std::size_t n1, std::size_t n2) {
  double peak = 0.0;
  for (const cplx& c : spec) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  const std::size_t i_nyq = n1 / 2, j_nyq = n2 / 2;
  for (std::size_t j = 0; j < n2; ++j) edge = std::max(edge, std::abs(spec[i_nyq * n2 + j]));
  for (std::size_t i = 0; i < n1; ++i) edge = std::max(edge, std::abs(spec[i * n2 + j_nyq]));
  return edge / peak;
}

}  // namespace

GaussianBiphoton propagate_analytic(const ExperimentParams& p, double distance) {
  p.validate();
  if (distance < 0.0)
    fail(ErrorCode::NonPositiveDistance, "distance = " + std::to_string(distance));
  const double a = p.alpha_for(distance);
  GaussianBiphoton gb;
  gb.alpha = a;
  gb.cq = cplx(p.sigma * p.sigma, a);
  gb.cr = cplx(p.omega_big * p.omega_big, a);
  gb.norm = std::sqrt(p.sigma * p.omega_big / std::numbers::pi) /
            (std::sqrt(gb.cq) * std::sqrt(gb.cr));
  return gb;
}

ComplexField2D sample_gaussian(const GaussianBiphoton& gb, const Grid1D& g1, const Grid1D& g2,
                               BoundaryCheck check, Exec exec) {
  ComplexField2D f(g1, g2);
  const cplx inv_cq = 1.0 / gb.cq;
  const cplx inv_cr = 1.0 / gb.cr;
  for_rows(exec, static_cast<std::ptrdiff_t>(g1.n), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double x1 = g1.node(i);
    for (std::size_t j = 0; j < g2.n; ++j) {
      const double x2 = g2.node(j);
      const double q = 0.5 * (x1 - x2);
      const double r = 0.5 * (x1 + x2);
      f.at(i, j) = gb.norm * std::exp(-(q * q) * inv_cq - (r * r) * inv_cr);
    }
  });
  if (check == BoundaryCheck::Enforce) check_boundary(f);
  return f;
}

double q_width(const GaussianBiphoton& gb) {
  return std::abs(gb.cq) / std::sqrt(gb.cq.real());
}

double r_width(const GaussianBiphoton& gb) {
  return std::abs(gb.cr) / std::sqrt(gb.cr.real());
}

ComplexField2D propagate_numeric(const ComplexField2D& f, const ExperimentParams& p,
                                 double distance, Exec exec) {
  p.validate();
  if (distance < 0.0)
    fail(ErrorCode::NonPositiveDistance, "distance = " + std::to_string(distance));
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  ComplexField2D out = f;
  fft2d(out.amp.data(), n1, n2, false, exec);

  const double edge = band_edge_fraction(out.amp, n1, n2);
  if (edge > 1e-6)
    fail(ErrorCode::AliasingRisk,
         "band-edge spectral amplitude is " + std::to_string(edge) +
             " of peak (> 1e-6); the field is not resolved on this grid");

  const double coef = distance / (2.0 * p.k0());
  std::vector<double> k1sq(n1), k2sq(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const double k = dft_wavenumber(i, n1, f.grid1.dx());
    k1sq[i] = k * k;
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const double k = dft_wavenumber(j, n2, f.grid2.dx());
    k2sq[j] = k * k;
  }
  for_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n2; ++j) {
      const double phase = -coef * (k1sq[i] + k2sq[j]);
      out.amp[i * n2 + j] *= cplx(std::cos(phase), std::sin(phase));
    }
  });
  fft2d(out.amp.data(), n1, n2, true, exec);
  return out;
}

ComplexField2D fresnel_to_grid(const ComplexField2D& f, const ExperimentParams& p,
                               double distance, const Grid1D& out1, const Grid1D& out2,
                               Exec exec) {
  p.validate();
  if (!(distance > 0.0))
    fail(ErrorCode::NonPositiveDistance,
         "kernel quadrature needs distance > 0, got " + std::to_string(distance));

  {
    double peak = 0.0;
    for (const cplx& a : f.amp) peak = std::max(peak, std::abs(a));
    if (peak > 0.0) {
      double edge = 0.0;
      const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
      for (std::size_t j = 0; j < n2; ++j)
        edge = std::max({edge, std::abs(f.at(0, j)), std::abs(f.at(n1 - 1, j))});
      for (std::size_t i = 0; i < n1; ++i)
        edge = std::max({edge, std::abs(f.at(i, 0)), std::abs(f.at(i, n2 - 1))});
      if (edge > 1e-9 * peak)
        fail(ErrorCode::NonCompactSupport,
             "input boundary amplitude is " + std::to_string(edge / peak) +
                 " of peak; kernel quadrature needs a compactly supported field");
    }
  }

  const double ld = p.lambda * distance;

  // The midpoint sum of the quadratic-phase kernel is an exact alias sum with
  // image spacing lambda*distance/dx. A grid field is band-limited to pi/dx, so
  // its transverse spread over the flight is at most half that spacing; images
  // stay clear of the output window as long as the spacing exceeds twice the
  // combined window extents.
  auto check_alias = [&](const Grid1D& gin, const Grid1D& gout, const char* axis) {
    const double extent_in = std::max(std::abs(gin.x_min), std::abs(gin.x_max));
    const double extent_out = std::max(std::abs(gout.x_min), std::abs(gout.x_max));
    if (ld / gin.dx() < 2.0 * (extent_in + extent_out))
      fail(ErrorCode::AliasingRisk,
           std::string("kernel image spacing ") + std::to_string(ld / gin.dx()) + " on the " +
               axis + " axis is under twice the window extents " +
               std::to_string(extent_in + extent_out) +
               "; refine the input grid or shrink the output window");
  };
  check_alias(f.grid1, out1, "x1");
  check_alias(f.grid2, out2, "x2");

  // sqrt(1/(i lambda distance)) = exp(-i pi/4)/sqrt(lambda distance)
  const cplx pref = std::exp(cplx(0.0, -std::numbers::pi / 4.0)) / std::sqrt(ld);

  auto kernel_matrix = [&](const Grid1D& gout, const Grid1D& gin) {
    std::vector<cplx> k(gout.n * gin.n);
    const cplx w = pref * gin.dx();  // midpoint quadrature weight folded in
    for_rows(exec, static_cast<std::ptrdiff_t>(gout.n), [&](std::ptrdiff_t oo) {
      const auto o = static_cast<std::size_t>(oo);
      const double X = gout.node(o);
      for (std::size_t m = 0; m < gin.n; ++m) {
        const double u = X - gin.node(m);
        const double phase = std::numbers::pi * u * u / ld;
        k[o * gin.n + m] = w * cplx(std::cos(phase), std::sin(phase));
      }
    });
    return k;
  };

  const std::vector<cplx> k1 = kernel_matrix(out1, f.grid1);
  const bool same_axes = f.grid1 == f.grid2 && out1 == out2;
  const std::vector<cplx> k2 = same_axes ? std::vector<cplx>() : kernel_matrix(out2, f.grid2);
  const std::vector<cplx>& k2ref = same_axes ? k1 : k2;

  const std::size_t n_in1 = f.grid1.n, n_in2 = f.grid2.n;

  // Masked fields are zero outside the slit nodes; summing only occupied rows
  // and columns (in fixed ascending order, so results stay thread-count
  // independent) turns the dense n^3 contraction into an n^2 * occupancy one.
  std::vector<std::size_t> rows_used, cols_used;
  {
    std::vector<char> col_flag(n_in2, 0);
    for (std::size_t m = 0; m < n_in1; ++m) {
      bool any = false;
      const cplx* arow = f.amp.data() + m * n_in2;
      for (std::size_t j = 0; j < n_in2; ++j) {
        if (arow[j] != cplx(0.0, 0.0)) {
          any = true;
          col_flag[j] = 1;
        }
      }
      if (any) rows_used.push_back(m);
    }
    for (std::size_t j = 0; j < n_in2; ++j)
      if (col_flag[j]) cols_used.push_back(j);
  }
  if (rows_used.empty()) fail(ErrorCode::ZeroNorm, "kernel quadrature input is identically zero");

  // First axis: T[o][j] = sum_m K1[o][m] psi[m][j], streamed over input rows so the
  // inner accumulation order is fixed by m regardless of threading.
  std::vector<cplx> t(out1.n * n_in2);
  for_rows(exec, static_cast<std::ptrdiff_t>(out1.n), [&](std::ptrdiff_t oo) {
    const auto o = static_cast<std::size_t>(oo);
    cplx* trow = t.data() + o * n_in2;
    for (std::size_t j = 0; j < n_in2; ++j) trow[j] = cplx(0.0, 0.0);
    const cplx* krow = k1.data() + o * n_in1;
    for (const std::size_t m : rows_used) {
      const cplx c = krow[m];
      const cplx* arow = f.amp.data() + m * n_in2;
      for (const std::size_t j : cols_used) trow[j] += c * arow[j];
    }
  });

  // Second axis: out[o][u] = sum_j K2[u][j] T[o][j].
  ComplexField2D out(out1, out2);
  for_rows(exec, static_cast<std::ptrdiff_t>(out1.n), [&](std::ptrdiff_t oo) {
    const auto o = static_cast<std::size_t>(oo);
    const cplx* trow = t.data() + o * n_in2;
    for (std::size_t u = 0; u < out2.n; ++u) {
      const cplx* krow = k2ref.data() + u * n_in2;
      cplx acc(0.0, 0.0);
      for (const std::size_t j : cols_used) acc += krow[j] * trow[j];
      out.at(o, u) = acc;
    }
  });
  return out;
}

}  // namespace biphoton

#include "biphoton/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/fft.hpp"

namespace biphoton {

namespace {

double max_abs(const ComplexField2D& f) {
  double peak = 0.0;
  for (const cplx& a : f.amp) peak = std::max(peak, std::abs(a));
  return peak;
}

/// Signed wave number of DFT bin j on an n-point grid of spacing dx.
double dft_wavenumber(std::size_t j, std::size_t n, double dx) {
  const auto js = static_cast<double>(j < n / 2 ? static_cast<std::ptrdiff_t>(j)
                                                : static_cast<std::ptrdiff_t>(j) -
                                                      static_cast<std::ptrdiff_t>(n));
  return 2.0 * std::numbers::pi * js / (static_cast<double>(n) * dx);
}

Moments density_moments(const std::vector<double>& rho, const Grid1D& g1, const Grid1D& g2,
                        const std::vector<double>& x1, const std::vector<double>& x2, Exec exec) {
  const std::size_t n1 = g1.n, n2 = g2.n;
  const double cell = g1.dx() * g2.dx();
  double mass = 0.0, m1 = 0.0, m2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
  // One pass per statistic keeps each reduction a plain ordered row sum.
  auto reduce = [&](auto&& weight) {
    return sum_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
      const auto i = static_cast<std::size_t>(ii);
      double acc = 0.0;
      for (std::size_t j = 0; j < n2; ++j) acc += weight(i, j) * rho[i * n2 + j];
      return acc;
    });
  };
  mass = reduce([&](std::size_t, std::size_t) { return 1.0; }) * cell;
  if (!(mass > 0.0)) fail(ErrorCode::ZeroNorm, "moments of a field with no probability mass");
  m1 = reduce([&](std::size_t i, std::size_t) { return x1[i]; }) * cell / mass;
  m2 = reduce([&](std::size_t, std::size_t j) { return x2[j]; }) * cell / mass;
  s11 = reduce([&](std::size_t i, std::size_t) { return (x1[i] - m1) * (x1[i] - m1); }) * cell / mass;
  s22 = reduce([&](std::size_t, std::size_t j) { return (x2[j] - m2) * (x2[j] - m2); }) * cell / mass;
  s12 = reduce([&](std::size_t i, std::size_t j) { return (x1[i] - m1) * (x2[j] - m2); }) * cell / mass;
  return Moments{m1, m2, s11, s22, s12};
}

}  // namespace

void check_boundary(const ComplexField2D& f, double threshold) {
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  const double peak = max_abs(f);
  if (peak == 0.0) return;
  double edge = 0.0;
  for (std::size_t j = 0; j < n2; ++j) {
    edge = std::max(edge, std::abs(f.at(0, j)));
    edge = std::max(edge, std::abs(f.at(n1 - 1, j)));
  }
  for (std::size_t i = 0; i < n1; ++i) {
    edge = std::max(edge, std::abs(f.at(i, 0)));
    edge = std::max(edge, std::abs(f.at(i, n2 - 1)));
  }
  if (edge > threshold * peak)
    fail(ErrorCode::GridTooNarrow,
         "boundary amplitude " + std::to_string(edge / peak) + " of peak exceeds " +
             std::to_string(threshold) + "; widen the window");
}

ComplexField2D sample_gepr(const ExperimentParams& p, const Grid1D& g1, const Grid1D& g2,
                           BoundaryCheck check, Exec exec) {
  p.validate();
  ComplexField2D f(g1, g2);
  const double inv4s2 = 1.0 / (4.0 * p.sigma * p.sigma);
  const double inv4w2 = 1.0 / (4.0 * p.omega_big * p.omega_big);
  const double norm = 1.0 / std::sqrt(std::numbers::pi * p.sigma * p.omega_big);
  for_rows(exec, static_cast<std::ptrdiff_t>(g1.n), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double x1 = g1.node(i);
    for (std::size_t j = 0; j < g2.n; ++j) {
      const double x2 = g2.node(j);
      const double dm = x1 - x2;
      const double dp = x1 + x2;
      f.at(i, j) = norm * std::exp(-dm * dm * inv4s2 - dp * dp * inv4w2);
    }
  });
  if (check == BoundaryCheck::Enforce) check_boundary(f);
  return f;
}

double norm2(const ComplexField2D& f, Exec exec) {
  const std::size_t n2 = f.grid2.n;
  const double cell = f.grid1.dx() * f.grid2.dx();
  const double total = sum_rows(exec, static_cast<std::ptrdiff_t>(f.grid1.n), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    double acc = 0.0;
    for (std::size_t j = 0; j < n2; ++j) acc += std::norm(f.at(i, j));
    return acc;
  });
  return total * cell;
}

void normalize(ComplexField2D& f, Exec exec) {
  const double m = norm2(f, exec);
  if (!(m > 1e-300)) fail(ErrorCode::ZeroNorm, "cannot normalize a field with norm2 ~ 0");
  const double scale = 1.0 / std::sqrt(m);
  for_rows(exec, static_cast<std::ptrdiff_t>(f.grid1.n), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < f.grid2.n; ++j) f.at(i, j) *= scale;
  });
}

Moments moments(const ComplexField2D& f, Exec exec) {
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  std::vector<double> rho(n1 * n2);
  for_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n2; ++j) rho[i * n2 + j] = std::norm(f.at(i, j));
  });
  std::vector<double> x1(n1), x2(n2);
  for (std::size_t i = 0; i < n1; ++i) x1[i] = f.grid1.node(i);
  for (std::size_t j = 0; j < n2; ++j) x2[j] = f.grid2.node(j);
  return density_moments(rho, f.grid1, f.grid2, x1, x2, exec);
}

Moments spectral_moments(const ComplexField2D& f, Exec exec) {
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  std::vector<cplx> work(f.amp);
  fft2d(work.data(), n1, n2, false, exec);
  std::vector<double> rho(n1 * n2);
  for_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n2; ++j) rho[i * n2 + j] = std::norm(work[i * n2 + j]);
  });
  std::vector<double> k1(n1), k2(n2);
  for (std::size_t i = 0; i < n1; ++i) k1[i] = dft_wavenumber(i, n1, f.grid1.dx());
  for (std::size_t j = 0; j < n2; ++j) k2[j] = dft_wavenumber(j, n2, f.grid2.dx());
  // Conjugate grid spacing dk = 2 pi / (n dx); moments normalize by total mass, so
  // only the k values matter, not the quadrature weights.
  Grid1D gk1 = Grid1D::centered_on_zero(2.0 * std::numbers::pi / (static_cast<double>(n1) * f.grid1.dx()), n1);
  Grid1D gk2 = Grid1D::centered_on_zero(2.0 * std::numbers::pi / (static_cast<double>(n2) * f.grid2.dx()), n2);
  return density_moments(rho, gk1, gk2, k1, k2, exec);
}

double spectral_norm2(const ComplexField2D& f, Exec exec) {
  const std::size_t n1 = f.grid1.n, n2 = f.grid2.n;
  std::vector<cplx> work(f.amp);
  fft2d(work.data(), n1, n2, false, exec);
  const double total = sum_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    double acc = 0.0;
    for (std::size_t j = 0; j < n2; ++j) acc += std::norm(work[i * n2 + j]);
    return acc;
  });
  // |psi~|^2 dk1 dk2 with psi~ = (dx1 dx2 / 2 pi) * DFT and dk = 2 pi / (n dx).
  return total * f.grid1.dx() * f.grid2.dx() /
         (static_cast<double>(n1) * static_cast<double>(n2));
}

Pattern diagonal_slice(const ComplexField2D& f, Provenance prov, std::string label) {
  if (!(f.grid1 == f.grid2))
    fail(ErrorCode::GridMismatch, "diagonal slice needs identical axis grids");
  std::vector<double> raw(f.grid1.n);
  for (std::size_t i = 0; i < f.grid1.n; ++i) raw[i] = std::norm(f.at(i, i));
  return make_pattern(f.grid1, std::move(raw), prov, std::move(label));
}

Pattern conditional_slice(const ComplexField2D& f, double x2_fixed, Provenance prov,
                          std::string label) {
  const std::size_t j = f.grid2.nearest_node(x2_fixed);
  std::vector<double> raw(f.grid1.n);
  for (std::size_t i = 0; i < f.grid1.n; ++i) raw[i] = std::norm(f.at(i, j));
  return make_pattern(f.grid1, std::move(raw), prov, std::move(label));
}

void save_field(const ComplexField2D& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(ErrorCode::OutOfRange, "cannot open '" + path + "' for writing");
  std::fprintf(fp,
               "{\"schema_version\":1,\"grid1\":{\"x_min\":%.17g,\"x_max\":%.17g,\"n\":%zu},"
               "\"grid2\":{\"x_min\":%.17g,\"x_max\":%.17g,\"n\":%zu}}\n",
               f.grid1.x_min, f.grid1.x_max, f.grid1.n, f.grid2.x_min, f.grid2.x_max, f.grid2.n);
  std::fwrite(f.amp.data(), sizeof(cplx), f.amp.size(), fp);
  std::fclose(fp);
}

ComplexField2D load_field(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) fail(ErrorCode::OutOfRange, "cannot open '" + path + "' for reading");
  char header[512];
  if (!std::fgets(header, sizeof header, fp)) {
    std::fclose(fp);
    fail(ErrorCode::OutOfRange, "missing field header in '" + path + "'");
  }
  double a0, a1, b0, b1;
  std::size_t n1, n2;
  const int got = std::sscanf(header,
                              "{\"schema_version\":1,\"grid1\":{\"x_min\":%lg,\"x_max\":%lg,"
                              "\"n\":%zu},\"grid2\":{\"x_min\":%lg,\"x_max\":%lg,\"n\":%zu}}",
                              &a0, &a1, &n1, &b0, &b1, &n2);
  if (got != 6) {
    std::fclose(fp);
    fail(ErrorCode::OutOfRange, "unreadable field header in '" + path + "'");
  }
  ComplexField2D f(Grid1D(a0, a1, n1), Grid1D(b0, b1, n2));
  const std::size_t read = std::fread(f.amp.data(), sizeof(cplx), f.amp.size(), fp);
  std::fclose(fp);
  if (read != f.amp.size())
    fail(ErrorCode::OutOfRange, "truncated field payload in '" + path + "'");
  return f;
}

}  // namespace biphoton

// Times the OpenMP kernels against their serial reference bodies. Both code
// paths share the same row bodies and must produce bit-identical fields, so
// this table is purely about throughput.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "CLI11.hpp"

#include "biphoton/exec.hpp"
#include "biphoton/field.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/propagation.hpp"

namespace {

using biphoton::Exec;

double best_ms(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* kernel, std::size_t n, int reps,
         const std::function<void(Exec)>& body) {
  const double serial = best_ms(reps, [&] { body(Exec::Serial); });
  const double parallel = best_ms(reps, [&] { body(Exec::Parallel); });
  std::printf("%-24s %6zu %12.2f %12.2f %9.2f\n", kernel, n, serial, parallel,
              serial / parallel);
}

void bench_size(std::size_t n, int reps) {
  using namespace biphoton;

  // Widths resolved and compactly supported on these windows at every n used.
  ExperimentParams p;
  p.sigma = 1.0;
  p.omega_big = 5.0;
  const Grid1D beam = Grid1D::symmetric(30.0, n);

  ComplexField2D src = sample_gepr(p, beam, beam, BoundaryCheck::Allow);
  row("sample source state", n, reps, [&](Exec e) {
    src = sample_gepr(p, beam, beam, BoundaryCheck::Allow, e);
  });
  row("norm2", n, reps, [&](Exec e) { (void)norm2(src, e); });
  row("spectral flight", n, reps,
      [&](Exec e) { (void)propagate_numeric(src, p, 1.0, e); });

  // Slit-plane objects for the mask and the kernel quadrature to the screen.
  ExperimentParams ps;  // defaults: slit_sep 5, slit_width 0.2
  const Grid1D slit = Grid1D::symmetric(3.2, n);
  const Grid1D screen = Grid1D::centered_on_zero(800.0 / static_cast<double>(n), n);
  const DoubleSlitMask mask(ps.slit_sep, ps.slit_width);
  const GaussianBiphoton at_slit = propagate_analytic(ps, ps.dist_source_slit);
  const ComplexField2D slit_field =
      sample_gaussian(at_slit, slit, slit, BoundaryCheck::Allow);
  ComplexField2D masked = apply_mask(slit_field, mask);
  row("apply mask", n, reps,
      [&](Exec e) { masked = apply_mask(slit_field, mask, e); });
  row("kernel quadrature", n, reps, [&](Exec e) {
    (void)fresnel_to_grid(masked, ps, ps.dist_slit_screen, screen, screen, e);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark, serial reference vs OpenMP"};
  bool full = false;
  int reps = 3;
  app.add_flag("--full", full, "also time 1024^2 fields");
  app.add_option("--reps", reps, "repetitions, best time wins")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads available: %d\n", biphoton::max_threads());
  std::printf("%-24s %6s %12s %12s %9s\n", "kernel", "n", "serial_ms",
              "parallel_ms", "speedup");
  std::vector<std::size_t> sizes = {256, 512};
  if (full) sizes.push_back(1024);
  for (std::size_t n : sizes) bench_size(n, reps);
  return 0;
}

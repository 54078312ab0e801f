#include "biphoton/model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

FinalStateTerms term_weights(const ExperimentParams& p) {
  p.validate();
  FinalStateTerms t;
  t.lambda = p.lambda;
  t.slit_sep = p.slit_sep;
  t.slit_width = p.slit_width;
  t.dist_slit_screen = p.dist_slit_screen;
  t.weight_same = same_slit_weight(p);
  t.weight_diff = diff_slit_weight(p);
  const double a = p.alpha();
  const cplx cq(p.sigma * p.sigma, a);
  const cplx cr(p.omega_big * p.omega_big, a);
  const cplx c_slit =
      std::sqrt(p.sigma * p.omega_big / std::numbers::pi) / (std::sqrt(cq) * std::sqrt(cr));
  t.prefactor = 2.0 * c_slit / (cplx(0.0, 1.0) * p.lambda * p.dist_slit_screen);
  return t;
}

double envelope_f(double x, const FinalStateTerms& t) {
  const double ld = t.lambda * t.dist_slit_screen;
  const double u = 2.0 * std::numbers::pi * x * t.slit_width / ld;
  if (std::abs(u) < 1e-6) {
    // sin(u)/(u/eps) -> eps (1 - u^2/6) near the removable singularity
    return t.slit_width * (1.0 - u * u / 6.0);
  }
  return std::sin(u) / (2.0 * std::numbers::pi * x / ld);
}

cplx final_state_amplitude(double r, double q, const FinalStateTerms& t) {
  const double ld = t.lambda * t.dist_slit_screen;
  const double h = 0.5 * t.slit_sep;
  auto chirp = [&](double u) {
    const double phase = 2.0 * std::numbers::pi * u * u / ld;
    return cplx(std::cos(phase), std::sin(phase));
  };
  const cplx same = t.weight_same * chirp(q) * envelope_f(q, t) *
                    (chirp(r - h) * envelope_f(r - h, t) + chirp(r + h) * envelope_f(r + h, t));
  const cplx diff = t.weight_diff * chirp(r) * envelope_f(r, t) *
                    (chirp(q + h) * envelope_f(q + h, t) + chirp(q - h) * envelope_f(q - h, t));
  return t.prefactor * (same + diff);
}

double coincidence_law(double x, const FinalStateTerms& t) {
  const double ld = t.lambda * t.dist_slit_screen;
  const double f = envelope_f(x, t);
  const double eps = t.slit_width;
  const double mod = 1.0 + std::cos(4.0 * std::numbers::pi * x * t.slit_sep / ld);
  return std::norm(t.prefactor) * eps * eps * f * f * mod;
}

double conditional_law(double x1, const FinalStateTerms& t) {
  const double ld = t.lambda * t.dist_slit_screen;
  const double f = envelope_f(0.5 * x1, t);
  const double eps = t.slit_width;
  const double mod = 1.0 + std::cos(2.0 * std::numbers::pi * x1 * t.slit_sep / ld);
  return std::norm(t.prefactor) * eps * eps * f * f * mod;
}

double four_term_coincidence(double x, const FinalStateTerms& t) {
  return std::norm(final_state_amplitude(x, 0.0, t));
}

double four_term_conditional(double x1, const FinalStateTerms& t) {
  return std::norm(final_state_amplitude(0.5 * x1, 0.5 * x1, t));
}

namespace {

template <class F>
Pattern law_pattern(const Grid1D& axis, F&& law, std::string label) {
  std::vector<double> raw(axis.n);
  for (std::size_t m = 0; m < axis.n; ++m) raw[m] = law(axis.node(m));
  return make_pattern(axis, std::move(raw), Provenance::Analytic, std::move(label));
}

}  // namespace

Pattern coincidence_pattern(const Grid1D& axis, const FinalStateTerms& t) {
  return law_pattern(axis, [&](double x) { return coincidence_law(x, t); }, "coincidence_law");
}

Pattern conditional_pattern(const Grid1D& axis, const FinalStateTerms& t) {
  return law_pattern(axis, [&](double x) { return conditional_law(x, t); }, "conditional_law");
}

Pattern four_term_coincidence_pattern(const Grid1D& axis, const FinalStateTerms& t) {
  return law_pattern(axis, [&](double x) { return four_term_coincidence(x, t); },
                     "four_term_coincidence");
}

Pattern four_term_conditional_pattern(const Grid1D& axis, const FinalStateTerms& t) {
  return law_pattern(axis, [&](double x) { return four_term_conditional(x, t); },
                     "four_term_conditional");
}

}  // namespace biphoton

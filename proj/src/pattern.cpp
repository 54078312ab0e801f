#include "biphoton/pattern.hpp"

#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

const char* provenance_name(Provenance p) {
  return p == Provenance::Analytic ? "analytic" : "numeric_oracle";
}

Pattern make_pattern(const Grid1D& axis, std::vector<double> raw, Provenance provenance,
                     std::string label) {
  if (raw.size() != axis.n)
    fail(ErrorCode::GridMismatch, "pattern '" + label + "': " + std::to_string(raw.size()) +
                                      " samples on a grid of " + std::to_string(axis.n) +
                                      " nodes");
  double mass = 0.0;
  for (double v : raw) mass += v;
  mass *= axis.dx();
  if (!(mass > 0.0))
    fail(ErrorCode::ZeroNorm, "pattern '" + label + "' carries no probability mass");
  for (double& v : raw) v /= mass;
  return Pattern{axis, std::move(raw), provenance, std::move(label)};
}

}  // namespace biphoton

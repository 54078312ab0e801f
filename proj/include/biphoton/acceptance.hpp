#pragma once

#include <ostream>

#include "biphoton/exec.hpp"

namespace biphoton {

/// Runs the ten reproduction criteria against the library and prints one
/// [PASS]/[FAIL] line per criterion plus context lines. Returns the number of
/// failed criteria. Criteria that need the suppressed-correlation regime run
/// at a shorter source-slit distance than the default geometry; each such
/// line says so, and the default-geometry value is printed alongside.
int run_acceptance(std::ostream& os, Exec exec = Exec::Parallel);

}  // namespace biphoton

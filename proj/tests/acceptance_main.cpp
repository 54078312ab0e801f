// Standalone gate: every reproduction criterion at its stated tolerance, one
// verdict line each. Exit 0 only when all ten hold.

#include <iostream>

#include "biphoton/acceptance.hpp"

int main() {
  const int failures = biphoton::run_acceptance(std::cout);
  return failures == 0 ? 0 : 1;
}

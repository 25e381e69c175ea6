#include <iostream>

#include "thermoprobe/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : thermoprobe::run_acceptance_suite(&std::cout)) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " acceptance criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}

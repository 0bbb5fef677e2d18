// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <iostream>

#include "dcenter/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& criterion : dcenter::acceptance::criteria()) {
    const auto result = criterion();
    std::cout << dcenter::acceptance::format_result(result, true) << std::endl;
    if (!result.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : "acceptance criteria failed: ")
            << (failed == 0 ? "" : std::to_string(failed)) << std::endl;
  return failed == 0 ? 0 : 1;
}

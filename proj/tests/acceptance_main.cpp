// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion-id ...]

#include <cstdlib>
#include <iostream>
#include <vector>

#include "tvgp/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int id = 1; id <= tvgp::acceptance::kCriterionCount; ++id) ids.push_back(id);
  }
  bool all = true;
  for (int id : ids) {
    const auto r = tvgp::acceptance::run_criterion(id);
    std::cout << tvgp::acceptance::format_line(r) << "  (" << r.seconds << " s)" << std::endl;
    all = all && r.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}

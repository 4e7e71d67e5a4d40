#pragma once

#include <string>
#include <vector>

namespace exotic {

struct SelftestCheck {
  std::string name;
  bool pass;
  std::string detail;
};

/// Fast invariant suites over every module (small radii and budgets).
std::vector<SelftestCheck> run_selftest();

}  // namespace exotic

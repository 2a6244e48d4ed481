#pragma once

#include <string>
#include <vector>

namespace nmds {

struct CheckOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Invariant suites of every module at fixed small parameters. Deterministic.
std::vector<CheckOutcome> run_selfcheck();

}  // namespace nmds

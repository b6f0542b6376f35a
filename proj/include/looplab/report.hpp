#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace looplab {

/// Outcome of one named check. Failure messages are capped; the counters say
/// how many instances were checked and how many were skipped past a cutoff
/// or vacuous.
struct CheckReport {
  std::string check;
  bool pass = true;
  std::vector<std::string> failures;
  std::size_t failureCount = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t vacuous = 0;  // hypotheses not met, so nothing to conclude

  void fail(std::string what) {
    pass = false;
    ++failureCount;
    if (failures.size() < 50) failures.push_back(std::move(what));
  }

  nlohmann::json toJson() const {
    return {{"check", check}, {"pass", pass}, {"failures", failures}, {"failureCount", failureCount},
            {"checked", checked}, {"skipped", skipped}, {"vacuous", vacuous}};
  }
};

}  // namespace looplab

// Satisfiability pruning: drops switches no satisfiable initial-rooted
// path can reach, then locations left unreachable.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pickles/sts.hpp"
#include "pickles/symbolic.hpp"

namespace pickles {

struct PruneReport {
  struct RemovedSwitch {
    std::size_t index;        // switch id in the input system
    std::string scenario;
    std::string brief;
    // True when the guard touches decimal-valued state, so a larger
    // sample set could make it satisfiable after all.
    bool sampling_sensitive = false;
  };

  std::vector<RemovedSwitch> removed_switches;
  std::vector<std::string> removed_locations;
  // Scenarios none of whose switches survive.
  std::vector<std::string> unreachable_scenarios;
  std::size_t kept_switches = 0;
};

// Keeps exactly the switches that terminate some satisfiable repetition-
// free path from the initial location (an unsatisfiable prefix cannot
// become satisfiable by extension, so its subtree is skipped). Kept
// locations are those the kept switches reach; the initial location
// always stays. Idempotent.
Sts prune(const Sts& s, PathSolver& solver, PruneReport* report = nullptr);

}  // namespace pickles

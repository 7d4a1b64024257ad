// Switch-coverage test generation: enumerate maximal satisfiable paths,
// cover every switch greedily, solve each chosen path once.
#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "pickles/sts.hpp"
#include "pickles/symbolic.hpp"

namespace pickles {

// One executable test: a connected switch path, initial values for every
// declared variable (declaration order), and one parameter tuple per step
// (empty for parameterless switches). The values satisfy the path
// condition.
struct FormalTestCase {
  std::vector<std::size_t> switches;
  std::vector<Value> ini;
  std::vector<std::vector<Value>> values;
};

struct CoverageReport {
  std::set<std::size_t> covered;
  std::size_t total = 0;
  double ratio = 1.0;
  std::vector<std::vector<std::size_t>> traces;  // per test, its switch ids
};

// Deterministic suite covering every switch of `s` (intended for pruned
// systems). Paths repeat no switch and stop at `max_length` switches
// (0 = number of switches). A switch no satisfiable path reaches is an
// internal inconsistency.
std::vector<FormalTestCase> generate_switch_coverage(const Sts& s, PathSolver& solver,
                                                     std::size_t max_length = 0);

CoverageReport coverage_of(const std::vector<FormalTestCase>& tests, const Sts& s);

}  // namespace pickles

// Forward symbolic execution of switch paths, a deterministic bounded
// solver over the declared domains, and input-space counting.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pickles/domain.hpp"
#include "pickles/sts.hpp"

namespace pickles {

// A connected switch path from the initial location together with its
// condition: the conjunction of all guards along the path, rewritten so
// location variables denote their initial copies (through the accumulated
// assignments) and parameters carry their step index.
struct SymbolicPath {
  std::vector<std::size_t> switches;  // indices into the source system
  TermPtr condition;
};

// Builds the path condition by forward substitution. The path must start
// at the initial location and be connected.
SymbolicPath path_condition(const Sts& s, const std::vector<std::size_t>& path);

// A satisfying assignment: one initial value per declared variable
// (declaration order) and one value per parameter per step (an empty
// sequence for parameterless switches).
struct Solution {
  std::vector<Value> ini;
  std::vector<std::vector<Value>> step_values;
};

// Satisfiability backend for path conditions. Implementations must be
// deterministic: the same system and path always yield the same result.
class PathSolver {
 public:
  virtual ~PathSolver() = default;
  virtual std::optional<Solution> solve(const Sts& s, const SymbolicPath& sp) = 0;
};

// The built-in reference solver: backtracking search over the finitized
// domains with single-variable candidate filtering, fewest-candidates-
// first ordering, and conflict-directed backjumping. Unconstrained
// variables take the first value their domain enumerates.
class BoundedSolver : public PathSolver {
 public:
  explicit BoundedSolver(SamplingPlan plan) : plan_(std::move(plan)) {}

  std::optional<Solution> solve(const Sts& s, const SymbolicPath& sp) override;
  const SamplingPlan& plan() const { return plan_; }

 private:
  SamplingPlan plan_;
};

// Number of parameter tuples of the input switch `sw` (drawn from the
// finitized domains) that satisfy its guard once the location variables
// are bound by `fixed`. Every location variable the guard mentions must
// be fixed.
std::uint64_t count_satisfying_inputs(const Sts& s, const Switch& sw,
                                      const std::map<std::string, Value>& fixed,
                                      const SamplingPlan& plan);

// Default samples for every decimal interval reachable from the declared
// variables: the representable values next to the interval ends, every
// constant the guards compare that path against (when strictly inside),
// and, when such constants exist, the midpoints between consecutive
// boundary points.
SamplingPlan default_sampling_plan(const Sts& s);

}  // namespace pickles

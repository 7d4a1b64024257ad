#include "pickles/testgen.hpp"

#include <optional>
#include <string>
#include <utility>

#include "pickles/diagnostics.hpp"

namespace pickles {

namespace {

// Depth-first enumeration of maximal satisfiable paths, in switch-id order.
// A path is maximal when no unused outgoing switch keeps it satisfiable
// within the length bound; unsatisfiable prefixes cut their whole subtree.
class PathEnumerator {
 public:
  PathEnumerator(const Sts& s, PathSolver& solver, std::size_t bound)
      : s_(s), solver_(solver), bound_(bound), on_path_(s.switches.size(), false) {}

  std::vector<std::vector<std::size_t>> run() {
    dfs(s_.initial);
    return std::move(paths_);
  }

 private:
  void dfs(const std::string& at) {
    bool extended = false;
    if (path_.size() < bound_) {
      for (std::size_t idx : s_.outgoing(at)) {
        if (on_path_[idx]) continue;
        path_.push_back(idx);
        if (solver_.solve(s_, path_condition(s_, path_)).has_value()) {
          extended = true;
          on_path_[idx] = true;
          dfs(s_.switches[idx].target);
          on_path_[idx] = false;
        }
        path_.pop_back();
      }
    }
    if (!extended && !path_.empty()) paths_.push_back(path_);
  }

  const Sts& s_;
  PathSolver& solver_;
  std::size_t bound_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> paths_;
};

}  // namespace

std::vector<FormalTestCase> generate_switch_coverage(const Sts& s, PathSolver& solver,
                                                     std::size_t max_length) {
  if (max_length == 0) max_length = s.switches.size();
  std::vector<std::vector<std::size_t>> paths = PathEnumerator(s, solver, max_length).run();

  std::set<std::size_t> uncovered;
  for (std::size_t idx = 0; idx < s.switches.size(); ++idx) uncovered.insert(idx);

  // Greedy cover: the path adding the most uncovered switches wins, ties go
  // to the earliest enumerated path.
  std::vector<std::vector<std::size_t>> chosen;
  std::vector<bool> used(paths.size(), false);
  while (!uncovered.empty()) {
    std::size_t best = paths.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (std::size_t idx : paths[i])
        if (uncovered.count(idx) != 0) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == paths.size())
      throw InternalError("switch " + std::to_string(*uncovered.begin()) + " (" +
                          s.switches[*uncovered.begin()].brief() +
                          ") lies on no satisfiable path; prune the system first");
    used[best] = true;
    for (std::size_t idx : paths[best]) uncovered.erase(idx);
    chosen.push_back(std::move(paths[best]));
  }

  std::vector<FormalTestCase> tests;
  for (std::vector<std::size_t>& path : chosen) {
    std::optional<Solution> sol = solver.solve(s, path_condition(s, path));
    if (!sol.has_value()) throw InternalError("selected path lost satisfiability");
    tests.push_back(FormalTestCase{std::move(path), std::move(sol->ini),
                                   std::move(sol->step_values)});
  }
  return tests;
}

CoverageReport coverage_of(const std::vector<FormalTestCase>& tests, const Sts& s) {
  CoverageReport report;
  report.total = s.switches.size();
  for (const FormalTestCase& tc : tests) {
    for (std::size_t idx : tc.switches) {
      if (idx >= s.switches.size())
        throw SemanticError("test references switch " + std::to_string(idx) +
                            ", but the system has only " + std::to_string(s.switches.size()));
      report.covered.insert(idx);
    }
    report.traces.push_back(tc.switches);
  }
  if (report.total != 0)
    report.ratio = static_cast<double>(report.covered.size()) /
                   static_cast<double>(report.total);
  return report;
}

}  // namespace pickles

#include "pickles/prune.hpp"

#include <algorithm>
#include <set>

namespace pickles {
namespace {

bool domain_mentions_decimal(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::DecInterval:
      return true;
    case DomainKind::Array:
      return domain_mentions_decimal(d.element());
    case DomainKind::Struct:
      for (const Domain::Attr& a : d.attrs())
        if (domain_mentions_decimal(a.domain)) return true;
      return false;
    default:
      return false;
  }
}

bool guard_touches_decimal(const Sts& s, const TermPtr& guard) {
  for (const VarKey& k : free_vars(guard)) {
    const VarBinding* b = s.find_variable(k.name);
    if (b && domain_mentions_decimal(b->domain)) return true;
  }
  return false;
}

struct Walker {
  const Sts& s;
  PathSolver& solver;
  std::set<std::size_t> kept;
  std::vector<std::size_t> path;
  std::vector<bool> on_path;

  explicit Walker(const Sts& sts, PathSolver& sol)
      : s(sts), solver(sol), on_path(sts.switches.size(), false) {}

  void dfs(const std::string& at) {
    for (std::size_t idx : s.outgoing(at)) {
      if (on_path[idx]) continue;
      path.push_back(idx);
      on_path[idx] = true;
      if (solver.solve(s, path_condition(s, path))) {
        kept.insert(idx);
        dfs(s.switches[idx].target);
      }
      on_path[idx] = false;
      path.pop_back();
    }
  }
};

}  // namespace

Sts prune(const Sts& s, PathSolver& solver, PruneReport* report) {
  Walker walker(s, solver);
  walker.dfs(s.initial);

  std::set<std::string> live_locations{s.initial};
  for (std::size_t idx : walker.kept) {
    live_locations.insert(s.switches[idx].source);
    live_locations.insert(s.switches[idx].target);
  }

  Sts out;
  out.name = s.name;
  out.initial = s.initial;
  out.variables = s.variables;
  out.gates = s.gates;
  out.ordinal = s.ordinal;
  for (const std::string& loc : s.locations)
    if (live_locations.count(loc)) out.locations.push_back(loc);
  for (std::size_t idx = 0; idx < s.switches.size(); ++idx)
    if (walker.kept.count(idx)) out.switches.push_back(s.switches[idx]);

  if (report) {
    report->kept_switches = out.switches.size();
    std::set<std::string> kept_scenarios, all_scenarios;
    for (std::size_t idx = 0; idx < s.switches.size(); ++idx) {
      const Switch& sw = s.switches[idx];
      if (!sw.scenario.empty()) all_scenarios.insert(sw.scenario);
      if (walker.kept.count(idx)) {
        if (!sw.scenario.empty()) kept_scenarios.insert(sw.scenario);
        continue;
      }
      report->removed_switches.push_back(
          {idx, sw.scenario, sw.brief(), guard_touches_decimal(s, sw.guard)});
    }
    for (const std::string& loc : s.locations)
      if (!live_locations.count(loc)) report->removed_locations.push_back(loc);
    for (const std::string& sc : all_scenarios)
      if (!kept_scenarios.count(sc)) report->unreachable_scenarios.push_back(sc);
  }
  return out;
}

}  // namespace pickles

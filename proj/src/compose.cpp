#include "pickles/compose.hpp"

#include <algorithm>
#include <set>

#include "pickles/diagnostics.hpp"

namespace pickles {
namespace {

void check_same_context(const Sts& a, const Sts& b) {
  if (!(a.variables == b.variables))
    throw SemanticError("systems '" + a.name + "' and '" + b.name +
                        "' disagree on their variables");
  if (!(a.gates == b.gates))
    throw SemanticError("systems '" + a.name + "' and '" + b.name +
                        "' disagree on their gates");
}

void add_disjoint(std::set<std::string>& seen, const Sts& s) {
  for (const std::string& loc : s.locations)
    if (!seen.insert(loc).second)
      throw SemanticError("location '" + loc + "' appears in two composed systems");
}

}  // namespace

Sts choice(const std::vector<Sts>& operands, const std::string& name) {
  if (operands.empty())
    throw SemanticError("alternative composition needs at least one operand");
  if (operands.size() == 1) return operands.front();

  for (std::size_t i = 1; i < operands.size(); ++i)
    check_same_context(operands.front(), operands[i]);
  std::set<std::string> seen;
  for (const Sts& s : operands) add_disjoint(seen, s);

  Sts out;
  out.name = name;
  out.variables = operands.front().variables;
  out.gates = operands.front().gates;
  out.initial = name + ".l0";
  if (seen.count(out.initial))
    throw SemanticError("location '" + out.initial + "' already exists");
  out.locations.push_back(out.initial);
  for (const Sts& s : operands)
    out.locations.insert(out.locations.end(), s.locations.begin(), s.locations.end());
  for (const Sts& s : operands)
    for (const Switch& sw : s.switches) {
      Switch copy = sw;
      if (copy.source == s.initial) copy.source = out.initial;
      out.switches.push_back(std::move(copy));
    }
  return out;
}

Sts sequential(const Sts& first, const Sts& second,
               std::vector<std::string>* warnings) {
  check_same_context(first, second);
  std::set<std::string> seen;
  add_disjoint(seen, first);
  add_disjoint(seen, second);

  std::vector<std::string> sinks = sink_locations(first);
  if (sinks.empty()) {
    if (warnings)
      warnings->push_back("'" + first.name +
                          "' has no sink locations; sequential continuation '" +
                          second.name + "' dropped");
    return first;
  }
  for (const Switch& sw : second.switches)
    if (sw.target == second.initial)
      throw SemanticError("initial location of '" + second.name +
                          "' has incoming switches; cannot continue from it");

  Sts out;
  out.name = first.name;
  out.variables = first.variables;
  out.gates = first.gates;
  out.initial = first.initial;
  out.locations = first.locations;
  for (const std::string& loc : second.locations)
    if (loc != second.initial) out.locations.push_back(loc);

  out.switches = first.switches;
  std::vector<const Switch*> entry;
  for (const Switch& sw : second.switches) {
    if (sw.source == second.initial)
      entry.push_back(&sw);
    else
      out.switches.push_back(sw);
  }
  for (const std::string& sink : sinks)
    for (const Switch* sw : entry) {
      Switch glue = *sw;
      glue.source = sink;
      out.switches.push_back(std::move(glue));
    }
  return out;
}

Sts rename_locations(const Sts& s, const std::string& suffix) {
  Sts out = s;
  out.name += suffix;
  for (std::string& loc : out.locations) loc += suffix;
  out.initial += suffix;
  for (Switch& sw : out.switches) {
    sw.source += suffix;
    sw.target += suffix;
  }
  return out;
}

Sts master_model(const std::vector<Sts>& primary, const std::vector<Sts>& all,
                 int depth, std::vector<std::string>* warnings) {
  if (primary.empty())
    throw SemanticError("an initial scenario must be executed before any other");
  if (depth < 1) throw SemanticError("the continuation depth must be at least 1");
  for (const Sts& p : primary) {
    bool known = std::any_of(all.begin(), all.end(),
                             [&p](const Sts& s) { return s.name == p.name; });
    if (!known)
      throw SemanticError("starting system '" + p.name + "' is not among the scenarios");
  }

  Sts ini = choice(primary, "ini");
  if (depth > 1) {
    Sts sys = choice(all, "sys");
    Sts chain = rename_locations(sys, "#" + std::to_string(depth));
    for (int i = depth - 1; i >= 2; --i)
      chain = sequential(rename_locations(sys, "#" + std::to_string(i)), chain, warnings);
    ini = sequential(ini, chain, warnings);
  }
  ini.name = "master";
  return ini;
}

}  // namespace pickles

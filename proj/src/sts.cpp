#include "pickles/sts.hpp"

#include <algorithm>
#include <set>

namespace pickles {

bool Sts::has_location(const std::string& id) const {
  return std::find(locations.begin(), locations.end(), id) != locations.end();
}

const VarBinding* Sts::find_variable(const std::string& id) const {
  for (const auto& v : variables)
    if (v.id == id) return &v;
  return nullptr;
}

const Gate* Sts::find_gate(const std::string& name) const {
  for (const auto& g : gates)
    if (g.name == name) return &g;
  return nullptr;
}

std::vector<std::size_t> Sts::outgoing(const std::string& location) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < switches.size(); ++i)
    if (switches[i].source == location) out.push_back(i);
  return out;
}

std::vector<std::string> sink_locations(const Sts& s) {
  std::set<std::string> with_outgoing;
  for (const auto& sw : s.switches) with_outgoing.insert(sw.source);
  std::vector<std::string> sinks;
  for (const auto& loc : s.locations)
    if (!with_outgoing.count(loc)) sinks.push_back(loc);
  return sinks;
}

std::vector<std::string> validate(const Sts& s) {
  std::vector<std::string> violations;
  auto report = [&](const std::string& msg) { violations.push_back(msg); };

  std::set<std::string> loc_set(s.locations.begin(), s.locations.end());
  if (loc_set.size() != s.locations.size()) report("duplicate location identifier");
  if (!loc_set.count(s.initial)) report("initial location '" + s.initial + "' not declared");

  std::set<std::string> var_ids;
  for (const auto& v : s.variables)
    if (!var_ids.insert(v.id).second) report("duplicate variable '" + v.id + "'");

  std::set<std::string> gate_names;
  for (const auto& g : s.gates) {
    if (!gate_names.insert(g.name).second)
      report("gate '" + g.name + "' declared with both directions or twice");
    std::set<std::string> seen;
    for (const auto& p : g.params) {
      if (!seen.insert(p).second)
        report("gate '" + g.name + "' repeats parameter '" + p + "'");
      if (!var_ids.count(p))
        report("gate '" + g.name + "' uses undeclared parameter '" + p + "'");
    }
  }

  for (std::size_t i = 0; i < s.switches.size(); ++i) {
    const Switch& sw = s.switches[i];
    const std::string at = "switch " + std::to_string(i) + " (" + sw.brief() + "): ";
    if (!loc_set.count(sw.source)) report(at + "unknown source location");
    if (!loc_set.count(sw.target)) report(at + "unknown target location");
    const Gate* g = s.find_gate(sw.gate);
    if (!g) {
      report(at + "unknown gate");
      continue;
    }
    if (g->direction != sw.direction) report(at + "direction disagrees with its gate");
    if (g->params != sw.params)
      report(at + "interaction inconsistency: parameter sequence differs from gate's");

    std::set<std::string> own_params(sw.params.begin(), sw.params.end());
    auto check_scope = [&](const TermPtr& t, const std::string& what) {
      for (const VarKey& key : free_vars(t)) {
        if (key.kind == VarKey::Kind::LocationVar) {
          if (!var_ids.count(key.name))
            report(at + what + " references undeclared variable '" + key.name + "'");
        } else {
          if (key.instance >= 0)
            report(at + what + " references a step-instance parameter");
          else if (!own_params.count(key.name))
            report(at + what + " references parameter '" + key.name +
                   "' outside this switch's interaction");
        }
      }
    };
    if (!sw.guard) {
      report(at + "missing guard term");
    } else {
      check_scope(sw.guard, "guard");
    }
    std::set<std::string> assigned;
    for (const auto& a : sw.assignment) {
      if (!var_ids.count(a.var))
        report(at + "assignment targets undeclared variable '" + a.var + "'");
      if (!assigned.insert(a.var).second)
        report(at + "assignment targets '" + a.var + "' twice");
      if (!a.term)
        report(at + "assignment to '" + a.var + "' has no term");
      else
        check_scope(a.term, "assignment to '" + a.var + "'");
    }
  }
  return violations;
}

void apply_assignment(const Switch& sw, const std::vector<Value>& param_values,
                      Valuation& state) {
  Valuation pre = state;
  for (std::size_t i = 0; i < sw.params.size() && i < param_values.size(); ++i)
    pre[VarKey{VarKey::Kind::Parameter, sw.params[i], -1}] = param_values[i];
  std::vector<std::pair<std::string, Value>> updates;
  for (const auto& a : sw.assignment)
    updates.emplace_back(a.var, evaluate(a.term, pre));
  for (auto& [var, value] : updates)
    state[VarKey{VarKey::Kind::LocationVar, var, -1}] = std::move(value);
}

}  // namespace pickles

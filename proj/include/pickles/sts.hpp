// Symbolic transition systems: locations, shared variable bindings,
// gates with fixed parameter sequences, and guarded switches.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pickles/domain.hpp"
#include "pickles/term.hpp"

namespace pickles {

enum class Direction { Input, Output };

inline std::string to_string(Direction d) { return d == Direction::Input ? "input" : "output"; }

// One declared variable. The same binding backs both a location variable
// (state) and a parameter (interaction payload); the two share the type
// and domain and differ only in how terms refer to them.
struct VarBinding {
  std::string id;
  Domain domain;

  Type type() const { return domain.type(); }
  bool operator==(const VarBinding& other) const {
    return id == other.id && domain == other.domain;
  }
};

// A gate is an action with a fixed direction and parameter sequence. The
// name is the action's source text.
struct Gate {
  std::string name;
  Direction direction = Direction::Input;
  std::vector<std::string> params;

  bool operator==(const Gate& other) const {
    return name == other.name && direction == other.direction && params == other.params;
  }
};

// One assignment entry: after the switch fires, `var` holds `term`
// evaluated in the pre-state. Variables without an entry keep their value.
struct Assign {
  std::string var;
  TermPtr term;
};

struct Switch {
  std::string source;
  std::string gate;
  std::vector<std::string> params;  // copy of the gate's sequence
  TermPtr guard;
  std::vector<Assign> assignment;
  std::string target;
  Direction direction = Direction::Input;

  // Back-translation annotations: the originating scenario and the step's
  // canonical source text (for outputs, including its guard block).
  std::string scenario;
  std::string step_text;

  std::string brief() const { return source + " --" + gate + "--> " + target; }
};

// Locations are string identifiers, unique within a system and kept
// globally distinguishable by construction (composition renames copies),
// in insertion order so every downstream ordering is deterministic.
struct Sts {
  std::string name;
  std::vector<std::string> locations;
  std::string initial;
  std::vector<VarBinding> variables;  // declaration order
  std::vector<Gate> gates;            // declaration order
  std::vector<Switch> switches;       // construction order; index is the switch id
  int ordinal = -1;                   // position of the source scenario in its suite

  bool has_location(const std::string& id) const;
  const VarBinding* find_variable(const std::string& id) const;
  const Gate* find_gate(const std::string& name) const;
  // Switch indices leaving `location`, in id order.
  std::vector<std::size_t> outgoing(const std::string& location) const;
};

// Locations without outgoing switches, in location order.
std::vector<std::string> sink_locations(const Sts& s);

// Structural well-formedness: every violation is reported, none thrown.
// Checks location references, gate existence and direction agreement,
// interaction consistency, duplicate-free parameter sequences, disjoint
// input/output gate names, guard/assignment variable scoping, and that
// assignments only target declared location variables.
std::vector<std::string> validate(const Sts& s);

// Applies one switch to a concrete state: checks nothing, evaluates the
// assignment right-hand sides in `state` extended with the switch's
// parameters bound to `param_values`, then writes the updates.
void apply_assignment(const Switch& sw, const std::vector<Value>& param_values,
                      Valuation& state);

}  // namespace pickles

// Semantic mapping from suite syntax trees to symbolic transition systems.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pickles/ast.hpp"
#include "pickles/sts.hpp"

namespace pickles {

// Shared declarations of a suite: variable bindings in declaration order,
// gates keyed by action text, and the set of structure attribute keys
// (which must not collide with variable names).
struct SuiteContext {
  std::vector<VarBinding> bindings;
  std::vector<Gate> gates;  // first-appearance order
  std::set<std::string> attr_keys;

  const VarBinding* find_binding(const std::string& id) const;
  const Gate* find_gate(const std::string& name) const;
  std::size_t binding_index(const std::string& id) const;  // throws if absent
};

struct TranslationResult {
  std::vector<Sts> primary;    // scenarios with the initial-state phrase
  std::vector<Sts> secondary;  // the rest
  SuiteContext context;
};

// Collects bindings and gates. Rejects duplicate declarations, malformed
// ranges (e.g. an integer with a value-set range), attribute keys that
// shadow variable names, and one action text used with conflicting
// parameter lists or directions.
SuiteContext build_context(const SpecSuiteAst& suite);

enum class GuardPosition { Given, Step };

// Maps a guard block to a term. In Given position every variable
// reference resolves to its location variable. In Step position a
// reference resolves to the parameter iff it is one of `step_params` and
// not marked "stored"; anything else resolves to the location variable.
// AND binds tighter than OR; runs of each associate to the left.
TermPtr map_guard_block(const GuardBlockAst& block, const SuiteContext& ctx,
                        GuardPosition position,
                        const std::vector<std::string>& step_params = {});

// Builds the linear STS of one scenario: m steps yield m+1 locations
// named s<ordinal>.l<j>. The first switch guard is the step guard
// conjoined with the Given guard (true when absent); every switch stores
// its parameters into the location variables of the same name.
Sts translate_scenario(const ScenarioAst& sc, int ordinal, const SuiteContext& ctx);

// Translates every scenario and splits the results by the presence of the
// initial-state phrase.
TranslationResult translate_suite(const SpecSuiteAst& suite);

// Rebuilds the declaration context a system carries, for checking and
// executing tests against a model loaded from its document form.
SuiteContext context_of(const Sts& s);

// Decodes a test-case value against the domain it must inhabit: numbers
// by the domain's numeric kind, texts as booleans or enumerated strings,
// structures reordered to the declared attribute order. Throws
// SemanticError when the shape, type, or range does not fit.
Value value_from_ast(const ValueAst& v, const Domain& d);

// Validates a parsed test case against the suite declarations: known
// variables with in-domain values, known gates with their parameter
// lists, inputs carrying exactly the gate's parameters, output guards
// that type-check. Throws SemanticError on the first violation.
void check_testcase(const TestCaseAst& tc, const SuiteContext& ctx);

}  // namespace pickles

#include "pickles/render.hpp"

#include <string>

#include "pickles/diagnostics.hpp"
#include "pickles/parser.hpp"
#include "pickles/printer.hpp"

namespace pickles {

namespace {

bool multiset_equal(const std::vector<ValueDefAst>& a, const std::vector<ValueDefAst>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const ValueDefAst& d : a) {
    bool found = false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i] || !(b[i] == d)) continue;
      used[i] = true;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

ValueAst value_to_ast(const Value& v) {
  ValueAst out;
  switch (v.kind()) {
    case ValueKind::Boolean:
      out.kind = ValueAst::Kind::Text;
      out.text = v.as_bool() ? "true" : "false";
      break;
    case ValueKind::Integer:
      out.kind = ValueAst::Kind::Number;
      out.number = std::to_string(v.as_int());
      break;
    case ValueKind::Decimal:
      out.kind = ValueAst::Kind::Number;
      out.number = v.as_decimal().str();
      break;
    case ValueKind::String:
      out.kind = ValueAst::Kind::Text;
      out.text = v.as_string();
      break;
    case ValueKind::Array:
      out.kind = ValueAst::Kind::Array;
      for (const Value& e : v.elems()) out.items.push_back(value_to_ast(e));
      break;
    case ValueKind::Struct:
      out.kind = ValueAst::Kind::Struct;
      for (const Value::Field& f : v.fields())
        out.fields.push_back(ValueAst::KeyVal{f.key, value_to_ast(f.value)});
      break;
  }
  return out;
}

TestCaseAst build_testcase_ast(const FormalTestCase& tc, const Sts& s) {
  if (tc.ini.size() != s.variables.size())
    throw InternalError("test initializes " + std::to_string(tc.ini.size()) + " of " +
                        std::to_string(s.variables.size()) + " variables");
  if (tc.values.size() != tc.switches.size())
    throw InternalError("test carries " + std::to_string(tc.values.size()) +
                        " value tuples for " + std::to_string(tc.switches.size()) + " steps");

  TestCaseAst ast;
  for (std::size_t i = 0; i < s.variables.size(); ++i)
    ast.init.push_back(ValueDefAst{s.variables[i].id, value_to_ast(tc.ini[i]), {}});

  for (std::size_t j = 0; j < tc.switches.size(); ++j) {
    if (tc.switches[j] >= s.switches.size())
      throw SemanticError("test references switch " + std::to_string(tc.switches[j]) +
                          ", but the system has only " + std::to_string(s.switches.size()));
    const Switch& sw = s.switches[tc.switches[j]];
    if (sw.direction == Direction::Output) {
      // The recorded source text carries the action and its condition;
      // output parameters stay implicit in the condition.
      if (sw.step_text.empty())
        throw SemanticError("no recorded source text for output '" + sw.gate + "'");
      ast.steps.push_back(parse_step_text(sw.step_text, StepDir::Out));
      continue;
    }
    if (tc.values[j].size() != sw.params.size())
      throw InternalError("step " + std::to_string(j) + " carries " +
                          std::to_string(tc.values[j].size()) + " values for " +
                          std::to_string(sw.params.size()) + " parameters");
    StepAst step;
    step.dir = StepDir::In;
    step.action = sw.gate;
    step.params = sw.params;
    if (!sw.params.empty()) {
      step.has_values = true;
      for (std::size_t k = 0; k < sw.params.size(); ++k)
        step.values.push_back(ValueDefAst{sw.params[k], value_to_ast(tc.values[j][k]), {}});
    }
    ast.steps.push_back(step);
  }
  return ast;
}

std::string render_test(const FormalTestCase& tc, const Sts& s) {
  return pretty_print(build_testcase_ast(tc, s));
}

bool testcases_equivalent(const TestCaseAst& a, const TestCaseAst& b) {
  if (!multiset_equal(a.init, b.init) || a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const StepAst& x = a.steps[i];
    const StepAst& y = b.steps[i];
    if (x.dir != y.dir || x.action != y.action || x.params != y.params ||
        x.guard != y.guard || x.has_values != y.has_values)
      return false;
    if (!multiset_equal(x.values, y.values)) return false;
  }
  return true;
}

}  // namespace pickles

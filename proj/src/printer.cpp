#include "pickles/printer.hpp"

#include <cctype>
#include <string>

#include "pickles/diagnostics.hpp"

namespace pickles {
namespace {

std::string spaces(int n) { return std::string(static_cast<size_t>(n), ' '); }

std::string quoted(const std::string& id) { return "\"" + id + "\""; }

std::string quoted_list(const std::vector<std::string>& ids) {
  std::string out;
  for (const std::string& id : ids) out += (out.empty() ? "" : ", ") + quoted(id);
  return out;
}

std::string print_range(const RangeAst& r) {
  if (r.kind == RangeAst::Kind::Set) {
    std::string out = "{";
    for (size_t i = 0; i < r.items.size(); ++i) out += (i ? ", " : "") + r.items[i];
    return out + "}";
  }
  return std::string(r.lo_open ? "(" : "[") + r.lo + "," + r.hi + (r.hi_open ? ")" : "]");
}

std::string print_card(const TypeDescAst& t) {
  switch (t.card) {
    case TypeDescAst::Card::AtMost: return "at most " + std::to_string(t.card_hi);
    case TypeDescAst::Card::Exactly: return "exactly " + std::to_string(t.card_hi);
    case TypeDescAst::Card::Between:
      return "between " + std::to_string(t.card_lo) + " and " + std::to_string(t.card_hi);
  }
  return "";
}

// indent is the indentation of the line this description starts on;
// structure attributes break onto lines indented two further.
std::string print_type_desc(const TypeDescAst& t, int indent) {
  switch (t.kind) {
    case TypeDescAst::Kind::Boolean: return "is a boolean with range " + print_range(t.range);
    case TypeDescAst::Kind::Integer: return "is an integer with range " + print_range(t.range);
    case TypeDescAst::Kind::Decimal: return "is a decimal with range " + print_range(t.range);
    case TypeDescAst::Kind::String: return "is a string with range " + print_range(t.range);
    case TypeDescAst::Kind::Array:
      return "is an array of " + print_card(t) + " elements where each element " +
             print_type_desc(t.element.at(0), indent);
    case TypeDescAst::Kind::Struct: {
      std::string out = "is a structure with attributes " + quoted_list(t.attr_ids) + " such that:";
      for (const TypeDescAst::AttrDesc& a : t.attrs)
        out += "\n" + spaces(indent + 2) + quoted(a.id) + " " +
               print_type_desc(a.desc, indent + 2);
      return out;
    }
  }
  return "";
}

std::string op_phrase(GuardAst::Op op) {
  switch (op) {
    case GuardAst::Op::Eq: return "equal to";
    case GuardAst::Op::Ne: return "not equal to";
    case GuardAst::Op::Gt: return "greater than";
    case GuardAst::Op::Lt: return "lower than";
    case GuardAst::Op::Ge: return "greater or equal than";
    case GuardAst::Op::Le: return "lower or equal than";
    case GuardAst::Op::Between: return "between";
  }
  return "";
}

std::string print_rhs(const GuardAst::Rhs& r) {
  switch (r.kind) {
    case GuardAst::Rhs::Kind::Number: return r.number;
    case GuardAst::Rhs::Kind::Text: return r.text;
    case GuardAst::Rhs::Kind::VarRef: return (r.stored ? "stored " : "") + quoted(r.var);
    case GuardAst::Rhs::Kind::Range: return print_range(r.range);
  }
  return "";
}

std::string conn_word(ConnAst c) { return c == ConnAst::And ? "AND" : "OR"; }

// Comparison text without the leading "is", shared by the one-line form.
std::string print_prim_op(const GuardAst& g) {
  if (g.op == GuardAst::Op::Between)
    return "between " + print_rhs(g.rhs) + " and " + print_rhs(g.rhs2);
  return op_phrase(g.op) + " " + print_rhs(g.rhs);
}

std::string print_guard(const GuardAst& g, int indent) {
  switch (g.kind) {
    case GuardAst::Kind::Prim: return "is " + print_prim_op(g);
    case GuardAst::Kind::Array: {
      std::string quant;
      switch (g.quant) {
        case GuardAst::Quant::All: quant = "all"; break;
        case GuardAst::Quant::AtLeast: quant = "at least " + std::to_string(g.count); break;
        case GuardAst::Quant::AtMost: quant = "at most " + std::to_string(g.count); break;
        case GuardAst::Quant::Exactly: quant = "exactly " + std::to_string(g.count); break;
      }
      return "has " + quant + " elements where each element " +
             print_guard(g.element.at(0), indent);
    }
    case GuardAst::Kind::Struct: {
      std::string out = "has attributes such that:";
      for (size_t i = 0; i < g.attr_guards.size(); ++i) {
        out += "\n" + spaces(indent + 2) + quoted(g.attr_guards[i].attr) + " " +
               print_guard(g.attr_guards[i].guard, indent + 2);
        if (i < g.attr_conns.size()) out += " " + conn_word(g.attr_conns[i]);
      }
      return out;
    }
  }
  return "";
}

std::string print_guard_block(const GuardBlockAst& block, int indent) {
  std::string out;
  for (size_t i = 0; i < block.clauses.size(); ++i) {
    const GuardClauseAst& c = block.clauses[i];
    out += spaces(indent) + (c.stored ? "stored " : "") + quoted(c.var) + " " +
           print_guard(c.guard, indent);
    if (i < block.conns.size()) out += " " + conn_word(block.conns[i]);
    out += "\n";
  }
  return out;
}

// True when the quoted form is needed for the text to survive re-lexing.
bool needs_quotes(const std::string& text) {
  if (text.empty()) return true;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '_' || c == '-' ||
        c == '.')
      continue;
    return true;
  }
  return std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-';
}

std::string print_value_inline(const ValueAst& v) {
  switch (v.kind) {
    case ValueAst::Kind::Number: return v.number;
    case ValueAst::Kind::Text: return needs_quotes(v.text) ? quoted(v.text) : v.text;
    case ValueAst::Kind::Struct: {
      std::string out = "{";
      for (size_t i = 0; i < v.fields.size(); ++i)
        out += (i ? ", " : "") + quoted(v.fields[i].key) + ": " +
               print_value_inline(v.fields[i].value);
      return out + "}";
    }
    case ValueAst::Kind::Array:
      throw InternalError("cannot render a nested array inline");
  }
  return "";
}

std::string print_value_defs(const std::vector<ValueDefAst>& defs, int indent) {
  std::string out;
  for (const ValueDefAst& d : defs) {
    out += spaces(indent) + quoted(d.var) + ":";
    if (d.value.kind == ValueAst::Kind::Array) {
      out += "\n";
      for (size_t i = 0; i < d.value.items.size(); ++i)
        out += spaces(indent + 4) + std::to_string(i + 1) + ": " +
               print_value_inline(d.value.items[i]) + "\n";
    } else {
      out += " " + print_value_inline(d.value) + "\n";
    }
  }
  return out;
}

// One-line conditions cover the common case of a single plain comparison
// on the step's only parameter.
bool sugar_eligible(const StepAst& s) {
  if (!s.guard || s.params.size() != 1) return false;
  const GuardBlockAst& b = *s.guard;
  if (b.clauses.size() != 1) return false;
  const GuardClauseAst& c = b.clauses[0];
  return !c.stored && c.var == s.params[0] && c.guard.kind == GuardAst::Kind::Prim;
}

std::string print_given(const GivenAst& g) {
  std::string out = "Given";
  if (g.initial) {
    out += " the system is in its initial state";
    if (!g.description.empty()) out += "\nAnd " + g.description;
  } else {
    out += " " + g.description;
  }
  if (g.guard) {
    out += " such that:\n";
    out += print_guard_block(*g.guard, 2);
  } else {
    out += "\n";
  }
  return out;
}

}  // namespace

std::string print_step_body(const StepAst& s) {
  std::string out = s.action;
  if (!s.params.empty()) out += " " + quoted_list(s.params);
  if (s.guard) {
    if (sugar_eligible(s)) {
      out += " " + print_prim_op(s.guard->clauses[0].guard) + "\n";
    } else {
      out += " such that:\n" + print_guard_block(*s.guard, 2);
    }
  } else if (s.has_values) {
    out += " with values:\n" + print_value_defs(s.values, 4);
  } else {
    out += "\n";
  }
  return out;
}

std::string pretty_print(const SpecSuiteAst& suite) {
  std::string out = "Variable Settings\n";
  for (const VarDeclAst& v : suite.vars)
    out += quoted(v.id) + " " + print_type_desc(v.desc, 0) + "\n";
  for (const ScenarioAst& sc : suite.scenarios) {
    out += "\nScenario " + sc.title + "\n";
    if (sc.given) out += print_given(*sc.given);
    for (size_t i = 0; i < sc.when.size(); ++i)
      out += (i == 0 ? "When " : "And ") + print_step_body(sc.when[i]);
    for (size_t i = 0; i < sc.then.size(); ++i)
      out += (i == 0 ? "Then " : "And ") + print_step_body(sc.then[i]);
  }
  return out;
}

std::string pretty_print(const TestCaseAst& tc) {
  std::string out = "Given the system is initialized with values:\n";
  out += print_value_defs(tc.init, 4);
  for (size_t i = 0; i < tc.steps.size(); ++i) {
    const StepAst& s = tc.steps[i];
    bool same_dir = i > 0 && tc.steps[i - 1].dir == s.dir;
    std::string kw = same_dir ? "And" : (s.dir == StepDir::In ? "When" : "Then");
    out += kw + " " + print_step_body(s);
  }
  return out;
}

}  // namespace pickles

// Syntax trees for specification suites and test cases. Nodes keep the
// source order and the verbatim action texts; positions are carried for
// diagnostics but ignored by structural equality.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pickles/diagnostics.hpp"

namespace pickles {

enum class StepDir { In, Out };

struct RangeAst {
  enum class Kind { Set, Interval };
  Kind kind = Kind::Set;
  std::vector<std::string> items;  // Set: literal texts in written order
  std::string lo, hi;              // Interval: number literal texts
  bool lo_open = false, hi_open = false;
  SourcePos pos;

  bool operator==(const RangeAst& o) const {
    return kind == o.kind && items == o.items && lo == o.lo && hi == o.hi &&
           lo_open == o.lo_open && hi_open == o.hi_open;
  }
};

struct TypeDescAst {
  enum class Kind { Boolean, Integer, Decimal, String, Array, Struct };
  enum class Card { AtMost, Exactly, Between };

  struct AttrDesc;

  Kind kind = Kind::Boolean;
  RangeAst range;                   // primitives
  Card card = Card::AtMost;         // arrays
  std::uint64_t card_lo = 1, card_hi = 1;
  std::vector<TypeDescAst> element; // arrays: exactly one entry
  std::vector<std::string> attr_ids;
  std::vector<AttrDesc> attrs;      // structs: one per attr_id, same order
  SourcePos pos;

  bool operator==(const TypeDescAst& o) const;
};

struct TypeDescAst::AttrDesc {
  std::string id;
  TypeDescAst desc;
  bool operator==(const AttrDesc& o) const { return id == o.id && desc == o.desc; }
};

struct VarDeclAst {
  std::string id;
  TypeDescAst desc;
  SourcePos pos;

  bool operator==(const VarDeclAst& o) const { return id == o.id && desc == o.desc; }
};

enum class ConnAst { And, Or };

struct GuardAst {
  enum class Kind { Prim, Array, Struct };
  enum class Op { Eq, Ne, Gt, Lt, Le, Ge, Between };
  enum class Quant { AtLeast, AtMost, Exactly, All };

  struct Rhs {
    enum class Kind { Number, Text, VarRef, Range };
    Kind kind = Kind::Text;
    std::string number;           // literal text, e.g. "2.0"
    std::string text;
    std::string var;
    bool stored = false;
    RangeAst range;

    bool operator==(const Rhs& o) const {
      return kind == o.kind && number == o.number && text == o.text && var == o.var &&
             stored == o.stored && range == o.range;
    }
  };

  struct AttrGuard;

  Kind kind = Kind::Prim;
  // Prim
  Op op = Op::Eq;
  Rhs rhs, rhs2;  // rhs2 only for Between
  // Array
  Quant quant = Quant::All;
  std::uint64_t count = 0;
  std::vector<GuardAst> element;  // exactly one entry
  // Struct
  std::vector<AttrGuard> attr_guards;
  std::vector<ConnAst> attr_conns;  // size attr_guards.size() - 1
  SourcePos pos;

  bool operator==(const GuardAst& o) const;
};

struct GuardAst::AttrGuard {
  std::string attr;
  GuardAst guard;
  bool operator==(const AttrGuard& o) const { return attr == o.attr && guard == o.guard; }
};

struct GuardClauseAst {
  bool stored = false;
  std::string var;
  GuardAst guard;
  SourcePos pos;

  bool operator==(const GuardClauseAst& o) const {
    return stored == o.stored && var == o.var && guard == o.guard;
  }
};

struct GuardBlockAst {
  std::vector<GuardClauseAst> clauses;
  std::vector<ConnAst> conns;  // size clauses.size() - 1

  bool operator==(const GuardBlockAst& o) const {
    return clauses == o.clauses && conns == o.conns;
  }
};

struct GivenAst {
  bool initial = false;
  std::string description;             // verbatim line text, quoted refs included
  std::vector<std::string> refs;       // quoted variable ids inside description
  std::optional<GuardBlockAst> guard;
  SourcePos pos;

  bool operator==(const GivenAst& o) const {
    return initial == o.initial && description == o.description && refs == o.refs &&
           guard == o.guard;
  }
};

struct ValueAst {
  enum class Kind { Number, Text, Array, Struct };

  struct KeyVal;

  Kind kind = Kind::Text;
  std::string number;  // literal text
  std::string text;
  std::vector<ValueAst> items;   // array elements, index order
  std::vector<KeyVal> fields;    // struct fields, written order
  SourcePos pos;

  bool operator==(const ValueAst& o) const;
};

struct ValueAst::KeyVal {
  std::string key;
  ValueAst value;
  bool operator==(const KeyVal& o) const { return key == o.key && value == o.value; }
};

struct ValueDefAst {
  std::string var;
  ValueAst value;
  SourcePos pos;

  bool operator==(const ValueDefAst& o) const { return var == o.var && value == o.value; }
};

struct StepAst {
  StepDir dir = StepDir::In;
  std::string action;                   // verbatim text before the parameters
  std::vector<std::string> params;
  std::optional<GuardBlockAst> guard;   // specification steps
  bool has_values = false;              // test input steps
  std::vector<ValueDefAst> values;
  SourcePos pos;

  bool operator==(const StepAst& o) const {
    return dir == o.dir && action == o.action && params == o.params && guard == o.guard &&
           has_values == o.has_values && values == o.values;
  }
};

struct ScenarioAst {
  std::string title;
  std::optional<GivenAst> given;
  std::vector<StepAst> when;  // non-empty
  std::vector<StepAst> then;  // non-empty
  SourcePos pos;

  bool primary() const { return given && given->initial; }
  bool operator==(const ScenarioAst& o) const {
    return title == o.title && given == o.given && when == o.when && then == o.then;
  }
};

struct SpecSuiteAst {
  std::vector<VarDeclAst> vars;
  std::vector<ScenarioAst> scenarios;

  bool operator==(const SpecSuiteAst& o) const {
    return vars == o.vars && scenarios == o.scenarios;
  }
};

struct TestCaseAst {
  std::vector<ValueDefAst> init;  // TestGiven value definitions
  std::vector<StepAst> steps;     // inputs carry values, outputs carry guards

  bool operator==(const TestCaseAst& o) const {
    return init == o.init && steps == o.steps;
  }
};

inline bool TypeDescAst::operator==(const TypeDescAst& o) const {
  return kind == o.kind && range == o.range && card == o.card && card_lo == o.card_lo &&
         card_hi == o.card_hi && element == o.element && attr_ids == o.attr_ids &&
         attrs == o.attrs;
}

inline bool GuardAst::operator==(const GuardAst& o) const {
  return kind == o.kind && op == o.op && rhs == o.rhs && rhs2 == o.rhs2 &&
         quant == o.quant && count == o.count && element == o.element &&
         attr_guards == o.attr_guards && attr_conns == o.attr_conns;
}

inline bool ValueAst::operator==(const ValueAst& o) const {
  return kind == o.kind && number == o.number && text == o.text && items == o.items &&
         fields == o.fields;
}

}  // namespace pickles

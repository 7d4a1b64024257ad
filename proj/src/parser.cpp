#include "pickles/parser.hpp"

#include <cctype>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "pickles/diagnostics.hpp"
#include "pickles/lexer.hpp"

namespace pickles {
namespace {

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Joins tokens back into display text. Commas attach to the previous token,
// quoted identifiers keep their quotes; everything else is space-separated.
std::string join_tokens(const std::vector<Token>& toks) {
  std::string out;
  for (const Token& t : toks) {
    std::string piece;
    switch (t.kind) {
      case Tok::Quoted: piece = "\"" + t.text + "\""; break;
      case Tok::Comma: piece = ","; break;
      case Tok::Colon: piece = ":"; break;
      case Tok::LBrace: piece = "{"; break;
      case Tok::RBrace: piece = "}"; break;
      case Tok::LBracket: piece = "["; break;
      case Tok::RBracket: piece = "]"; break;
      case Tok::LParen: piece = "("; break;
      case Tok::RParen: piece = ")"; break;
      default: piece = t.text; break;
    }
    if (out.empty()) {
      out = piece;
    } else if (t.kind == Tok::Comma || t.kind == Tok::Colon) {
      out += piece;
    } else {
      out += " " + piece;
    }
  }
  return out;
}

enum class Mode { Spec, Test };

class Parser {
 public:
  explicit Parser(const std::string& source) : ts_(lex(source)), pos_(0) {}

  SpecSuiteAst parse_spec_suite() {
    if (cur().kind == Tok::End) throw SyntaxError(cur().pos, "empty input", "Variable Settings");
    expect_word("Variable");
    expect_word("Settings");
    SpecSuiteAst suite;
    while (cur().kind == Tok::Quoted) suite.vars.push_back(parse_var_decl());
    if (suite.vars.empty())
      throw SyntaxError(cur().pos, "a suite needs at least one variable", "quoted variable name");
    while (is_word("Scenario")) suite.scenarios.push_back(parse_scenario());
    expect_end();
    return suite;
  }

  TestCaseAst parse_test_case() {
    if (cur().kind == Tok::End) throw SyntaxError(cur().pos, "empty input", "Given");
    expect_word("Given");
    expect_phrase_ci({"the", "system", "is", "initialized", "with", "values"});
    expect_kind(Tok::Colon, ":");
    TestCaseAst tc;
    tc.init = parse_value_defs();
    if (tc.init.empty())
      throw SyntaxError(cur().pos, "initialization needs at least one value", "quoted variable name");
    while (is_word("When") || is_word("Then")) {
      StepDir dir = is_word("When") ? StepDir::In : StepDir::Out;
      advance();
      tc.steps.push_back(parse_step(dir, Mode::Test));
      while (is_word("And") && cur().line_start) {
        advance();
        tc.steps.push_back(parse_step(dir, Mode::Test));
      }
    }
    if (tc.steps.empty()) throw SyntaxError(cur().pos, "a test case needs at least one step", "When");
    expect_end();
    return tc;
  }

  StepAst parse_step_fragment(StepDir dir) {
    StepAst s = parse_step(dir, Mode::Spec);
    expect_end();
    return s;
  }

 private:
  const Token& cur() const { return ts_.tokens[pos_]; }
  const Token& peek(size_t n) const {
    size_t i = pos_ + n;
    if (i >= ts_.tokens.size()) i = ts_.tokens.size() - 1;
    return ts_.tokens[i];
  }
  void advance() {
    if (cur().kind != Tok::End) ++pos_;
  }

  bool is_word(const std::string& w) const { return cur().kind == Tok::Word && cur().text == w; }
  bool is_word_ci(const std::string& w) const {
    return cur().kind == Tok::Word && lowercase(cur().text) == lowercase(w);
  }

  bool accept_word(const std::string& w) {
    if (!is_word(w)) return false;
    advance();
    return true;
  }

  void expect_word(const std::string& w) {
    if (!accept_word(w)) throw SyntaxError(cur().pos, "unexpected " + describe(cur()), w);
  }

  void expect_kind(Tok kind, const std::string& what) {
    if (cur().kind != kind) throw SyntaxError(cur().pos, "unexpected " + describe(cur()), what);
    advance();
  }

  // All-or-nothing match of consecutive words.
  bool accept_phrase(std::initializer_list<const char*> words) {
    size_t save = pos_;
    for (const char* w : words) {
      if (!accept_word(w)) {
        pos_ = save;
        return false;
      }
    }
    return true;
  }

  bool accept_phrase_ci(std::initializer_list<const char*> words) {
    size_t save = pos_;
    for (const char* w : words) {
      if (!is_word_ci(w)) {
        pos_ = save;
        return false;
      }
      advance();
    }
    return true;
  }

  void expect_phrase_ci(std::initializer_list<const char*> words) {
    if (!accept_phrase_ci(words)) {
      std::string want;
      for (const char* w : words) want += (want.empty() ? "" : " ") + std::string(w);
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), want);
    }
  }

  // True when the next tokens are "such that:".
  bool at_such_that() const {
    return cur().kind == Tok::Word && cur().text == "such" && peek(1).kind == Tok::Word &&
           peek(1).text == "that" && peek(2).kind == Tok::Colon;
  }
  void consume_such_that() {
    advance();
    advance();
    advance();
  }

  bool at_with_values() const {
    return cur().kind == Tok::Word && cur().text == "with" && peek(1).kind == Tok::Word &&
           peek(1).text == "values" && peek(2).kind == Tok::Colon;
  }
  void consume_with_values() {
    advance();
    advance();
    advance();
  }

  void expect_end() {
    if (cur().kind != Tok::End)
      throw SyntaxError(cur().pos, "unexpected trailing " + describe(cur()), "end of input");
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Quoted: return "\"" + t.text + "\"";
      default: return "'" + join_tokens({t}) + "'";
    }
  }

  // --- variable declarations ---

  VarDeclAst parse_var_decl() {
    VarDeclAst d;
    d.pos = cur().pos;
    d.id = cur().text;
    expect_kind(Tok::Quoted, "quoted variable name");
    d.desc = parse_type_desc();
    return d;
  }

  TypeDescAst parse_type_desc() {
    TypeDescAst t;
    t.pos = cur().pos;
    expect_word("is");
    if (!accept_word("a") && !accept_word("an"))
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "a or an");
    if (accept_word("boolean")) {
      t.kind = TypeDescAst::Kind::Boolean;
      parse_with_range(t);
    } else if (accept_word("integer")) {
      t.kind = TypeDescAst::Kind::Integer;
      parse_with_range(t);
    } else if (accept_word("decimal")) {
      t.kind = TypeDescAst::Kind::Decimal;
      parse_with_range(t);
    } else if (accept_word("string")) {
      t.kind = TypeDescAst::Kind::String;
      parse_with_range(t);
    } else if (accept_word("array")) {
      t.kind = TypeDescAst::Kind::Array;
      expect_word("of");
      parse_cardinality(t);
      expect_word("elements");
      expect_word("where");
      expect_word("each");
      expect_word("element");
      t.element.push_back(parse_type_desc());
    } else if (accept_word("structure")) {
      t.kind = TypeDescAst::Kind::Struct;
      expect_word("with");
      expect_word("attributes");
      t.attr_ids.push_back(expect_quoted("attribute name"));
      while (cur().kind == Tok::Comma && peek(1).kind == Tok::Quoted) {
        advance();
        t.attr_ids.push_back(expect_quoted("attribute name"));
      }
      if (!at_such_that())
        throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "such that:");
      consume_such_that();
      for (const std::string& id : t.attr_ids) {
        SourcePos p = cur().pos;
        std::string got = expect_quoted("attribute description");
        if (got != id)
          throw SyntaxError(p, "attribute descriptions must follow declaration order; got \"" + got +
                                   "\"",
                            "\"" + id + "\"");
        TypeDescAst::AttrDesc ad;
        ad.id = got;
        ad.desc = parse_type_desc();
        t.attrs.push_back(std::move(ad));
      }
    } else {
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()),
                        "boolean, integer, decimal, string, array or structure");
    }
    return t;
  }

  void parse_with_range(TypeDescAst& t) {
    expect_word("with");
    expect_word("range");
    t.range = parse_range();
  }

  void parse_cardinality(TypeDescAst& t) {
    if (accept_phrase({"at", "most"})) {
      t.card = TypeDescAst::Card::AtMost;
      t.card_lo = 1;
      t.card_hi = expect_count("element count");
    } else if (accept_word("exactly")) {
      t.card = TypeDescAst::Card::Exactly;
      t.card_lo = t.card_hi = expect_count("element count");
    } else if (accept_word("between")) {
      t.card = TypeDescAst::Card::Between;
      t.card_lo = expect_count("element count");
      expect_word("and");
      t.card_hi = expect_count("element count");
    } else {
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "at most, exactly or between");
    }
  }

  long expect_count(const std::string& what) {
    if (cur().kind != Tok::Number || cur().has_dot || cur().text[0] == '-')
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), what);
    long n = std::stol(cur().text);
    advance();
    return n;
  }

  RangeAst parse_range() {
    RangeAst r;
    r.pos = cur().pos;
    if (cur().kind == Tok::LBrace) {
      advance();
      r.kind = RangeAst::Kind::Set;
      while (true) {
        std::vector<Token> item;
        while (cur().kind != Tok::Comma && cur().kind != Tok::RBrace && cur().kind != Tok::End)
          item.push_back(take());
        if (item.empty())
          throw SyntaxError(cur().pos, "empty item in value set", "a value");
        r.items.push_back(join_tokens(item));
        if (cur().kind == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      expect_kind(Tok::RBrace, "}");
      return r;
    }
    bool lo_open;
    if (cur().kind == Tok::LBracket) {
      lo_open = false;
    } else if (cur().kind == Tok::LParen) {
      lo_open = true;
    } else {
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "a range");
    }
    advance();
    r.kind = RangeAst::Kind::Interval;
    r.lo_open = lo_open;
    r.lo = expect_number("lower bound");
    expect_kind(Tok::Comma, ",");
    r.hi = expect_number("upper bound");
    if (cur().kind == Tok::RBracket) {
      r.hi_open = false;
    } else if (cur().kind == Tok::RParen) {
      r.hi_open = true;
    } else {
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "] or )");
    }
    advance();
    return r;
  }

  std::string expect_number(const std::string& what) {
    if (cur().kind != Tok::Number)
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), what);
    std::string s = cur().text;
    advance();
    return s;
  }

  std::string expect_quoted(const std::string& what) {
    if (cur().kind != Tok::Quoted)
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), what);
    std::string s = cur().text;
    advance();
    return s;
  }

  Token take() {
    Token t = cur();
    advance();
    return t;
  }

  // --- scenarios ---

  ScenarioAst parse_scenario() {
    ScenarioAst sc;
    sc.pos = cur().pos;
    expect_word("Scenario");
    if (cur().kind == Tok::End || cur().pos.line != sc.pos.line)
      throw SyntaxError(cur().pos, "missing scenario title", "title text");
    sc.title = ts_.rest_of_line(cur());
    int title_line = cur().pos.line;
    while (cur().kind != Tok::End && cur().pos.line == title_line) advance();
    if (is_word("Given")) sc.given = parse_given();
    if (is_word("Then"))
      throw SyntaxError(cur().pos, "a scenario needs a When step before Then", "When");
    expect_word("When");
    sc.when.push_back(parse_step(StepDir::In, Mode::Spec));
    while (is_word("And") && cur().line_start) {
      advance();
      sc.when.push_back(parse_step(StepDir::In, Mode::Spec));
    }
    expect_word("Then");
    sc.then.push_back(parse_step(StepDir::Out, Mode::Spec));
    while (is_word("And") && cur().line_start) {
      advance();
      sc.then.push_back(parse_step(StepDir::Out, Mode::Spec));
    }
    return sc;
  }

  GivenAst parse_given() {
    GivenAst g;
    g.pos = cur().pos;
    expect_word("Given");
    g.initial = accept_phrase_ci({"the", "system", "is", "in", "its", "initial", "state"});
    if (g.initial && is_word("And") && cur().line_start) advance();
    // The description runs to "such that:" or to the end of its line.
    if (!(cur().line_start && (is_word("When") || is_word("Then")))) {
      int line = cur().pos.line;
      std::vector<Token> desc;
      while (cur().kind != Tok::End && cur().pos.line == line && !at_such_that()) {
        if (cur().kind == Tok::Quoted) g.refs.push_back(cur().text);
        desc.push_back(take());
      }
      g.description = join_tokens(desc);
    }
    if (at_such_that()) {
      consume_such_that();
      g.guard = parse_guard_block();
    }
    if (!g.initial && g.description.empty())
      throw SyntaxError(g.pos, "empty Given", "initial-state phrase or a description");
    return g;
  }

  // --- steps ---

  StepAst parse_step(StepDir dir, Mode mode) {
    StepAst s;
    s.dir = dir;
    s.pos = cur().pos;
    int line = cur().pos.line;
    std::vector<Token> action;
    while (cur().kind != Tok::End && cur().pos.line == line && cur().kind != Tok::Quoted &&
           !at_such_that() && !at_with_values())
      action.push_back(take());
    if (action.empty())
      throw SyntaxError(s.pos, "a step needs an action description", "action text");
    s.action = join_tokens(action);
    while (cur().kind == Tok::Quoted) {
      s.params.push_back(take().text);
      if (cur().kind == Tok::Comma && peek(1).kind == Tok::Quoted) advance();
    }
    if (at_such_that()) {
      if (mode == Mode::Test && dir == StepDir::In)
        throw SyntaxError(cur().pos, "test inputs carry values, not conditions", "with values:");
      consume_such_that();
      s.guard = parse_guard_block();
    } else if (at_with_values()) {
      if (mode == Mode::Spec)
        throw SyntaxError(cur().pos, "value blocks belong to test cases", "such that:");
      if (dir == StepDir::Out)
        throw SyntaxError(cur().pos, "observed steps carry conditions, not values", "such that:");
      consume_with_values();
      s.has_values = true;
      s.values = parse_value_defs();
      if (s.values.empty())
        throw SyntaxError(cur().pos, "a value block needs at least one entry",
                          "quoted variable name");
    } else if (cur().pos.line == line && at_guard_op()) {
      // One-line shorthand: the condition applies to the single parameter.
      if (s.params.size() != 1)
        throw SyntaxError(cur().pos, "a one-line condition needs exactly one parameter",
                          "such that:");
      if (mode == Mode::Test && dir == StepDir::In)
        throw SyntaxError(cur().pos, "test inputs carry values, not conditions", "with values:");
      GuardClauseAst clause;
      clause.pos = cur().pos;
      clause.stored = false;
      clause.var = s.params[0];
      clause.guard = parse_prim_guard();
      GuardBlockAst block;
      block.clauses.push_back(std::move(clause));
      s.guard = std::move(block);
    }
    return s;
  }

  bool at_guard_op() const {
    if (cur().kind != Tok::Word) return false;
    const std::string& w = cur().text;
    return w == "is" || w == "equal" || w == "not" || w == "greater" || w == "lower" ||
           w == "between" || w == "has";
  }

  // --- guards ---

  GuardBlockAst parse_guard_block() {
    GuardBlockAst block;
    block.clauses.push_back(parse_guard_clause());
    while (is_word("AND") || is_word("OR")) {
      block.conns.push_back(is_word("AND") ? ConnAst::And : ConnAst::Or);
      advance();
      block.clauses.push_back(parse_guard_clause());
    }
    return block;
  }

  GuardClauseAst parse_guard_clause() {
    GuardClauseAst c;
    c.pos = cur().pos;
    c.stored = accept_word("stored");
    c.var = expect_quoted("quoted variable name");
    c.guard = parse_guard();
    return c;
  }

  GuardAst parse_guard() {
    GuardAst g;
    g.pos = cur().pos;
    if (is_word("has")) {
      advance();
      if (accept_word("attributes")) {
        g.kind = GuardAst::Kind::Struct;
        if (!at_such_that())
          throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "such that:");
        consume_such_that();
        // Connectives bind to the innermost open clause list.
        g.attr_guards.push_back(parse_attr_guard());
        while (is_word("AND") || is_word("OR")) {
          g.attr_conns.push_back(is_word("AND") ? ConnAst::And : ConnAst::Or);
          advance();
          g.attr_guards.push_back(parse_attr_guard());
        }
        return g;
      }
      g.kind = GuardAst::Kind::Array;
      if (accept_word("all")) {
        g.quant = GuardAst::Quant::All;
      } else if (accept_phrase({"at", "least"})) {
        g.quant = GuardAst::Quant::AtLeast;
        g.count = expect_count("element count");
      } else if (accept_phrase({"at", "most"})) {
        g.quant = GuardAst::Quant::AtMost;
        g.count = expect_count("element count");
      } else if (accept_word("exactly")) {
        g.quant = GuardAst::Quant::Exactly;
        g.count = expect_count("element count");
      } else {
        throw SyntaxError(cur().pos, "unexpected " + describe(cur()),
                          "all, at least, at most or exactly");
      }
      expect_word("elements");
      expect_word("where");
      expect_word("each");
      expect_word("element");
      g.element.push_back(parse_guard());
      return g;
    }
    return parse_prim_guard();
  }

  GuardAst::AttrGuard parse_attr_guard() {
    GuardAst::AttrGuard ag;
    ag.attr = expect_quoted("attribute name");
    ag.guard = parse_guard();
    return ag;
  }

  GuardAst parse_prim_guard() {
    GuardAst g;
    g.pos = cur().pos;
    g.kind = GuardAst::Kind::Prim;
    accept_word("is");
    if (accept_phrase({"equal", "to"})) {
      g.op = GuardAst::Op::Eq;
    } else if (accept_phrase({"not", "equal", "to"})) {
      g.op = GuardAst::Op::Ne;
    } else if (accept_word("greater")) {
      if (accept_phrase({"or", "equal", "than"})) {
        g.op = GuardAst::Op::Ge;
      } else {
        expect_word("than");
        g.op = GuardAst::Op::Gt;
      }
    } else if (accept_word("lower")) {
      if (accept_phrase({"or", "equal", "than"})) {
        g.op = GuardAst::Op::Le;
      } else {
        expect_word("than");
        g.op = GuardAst::Op::Lt;
      }
    } else if (accept_word("between")) {
      g.op = GuardAst::Op::Between;
      g.rhs = parse_rhs(true);
      expect_word("and");
      g.rhs2 = parse_rhs(false);
      return g;
    } else {
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()),
                        "equal to, not equal to, greater than, lower than or between");
    }
    g.rhs = parse_rhs(false);
    return g;
  }

  // Comparison right-hand side. stop_at_and guards the lower bound of
  // "between x and y" so the bare-text capture does not swallow "and".
  GuardAst::Rhs parse_rhs(bool stop_at_and) {
    GuardAst::Rhs r;
    if (cur().kind == Tok::Number) {
      r.kind = GuardAst::Rhs::Kind::Number;
      r.number = take().text;
      return r;
    }
    if (is_word("stored") && peek(1).kind == Tok::Quoted) {
      advance();
      r.kind = GuardAst::Rhs::Kind::VarRef;
      r.stored = true;
      r.var = take().text;
      return r;
    }
    if (cur().kind == Tok::Quoted) {
      r.kind = GuardAst::Rhs::Kind::VarRef;
      r.var = take().text;
      return r;
    }
    if (cur().kind == Tok::LBrace || cur().kind == Tok::LBracket || cur().kind == Tok::LParen) {
      r.kind = GuardAst::Rhs::Kind::Range;
      r.range = parse_range();
      return r;
    }
    // Bare text value, ending at the line break or the next connective.
    int line = cur().pos.line;
    std::vector<Token> text;
    while (cur().kind == Tok::Word && cur().pos.line == line && !is_word("AND") && !is_word("OR") &&
           !(stop_at_and && is_word("and")))
      text.push_back(take());
    if (text.empty())
      throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "a value");
    r.kind = GuardAst::Rhs::Kind::Text;
    r.text = join_tokens(text);
    return r;
  }

  // --- test values ---

  std::vector<ValueDefAst> parse_value_defs() {
    std::vector<ValueDefAst> defs;
    while (cur().kind == Tok::Quoted && peek(1).kind == Tok::Colon) {
      ValueDefAst d;
      d.pos = cur().pos;
      d.var = take().text;
      advance();  // colon
      d.value = parse_value();
      defs.push_back(std::move(d));
    }
    return defs;
  }

  ValueAst parse_value() {
    ValueAst v;
    v.pos = cur().pos;
    if (cur().kind == Tok::Number && peek(1).kind == Tok::Colon) {
      v.kind = ValueAst::Kind::Array;
      long expected = 1;
      while (cur().kind == Tok::Number && peek(1).kind == Tok::Colon) {
        if (cur().has_dot || std::stol(cur().text) != expected)
          throw SyntaxError(cur().pos, "array indices must count up from 1",
                            std::to_string(expected) + ":");
        advance();
        advance();  // index and colon
        v.items.push_back(parse_value());
        ++expected;
      }
      return v;
    }
    if (cur().kind == Tok::LBrace) {
      advance();
      v.kind = ValueAst::Kind::Struct;
      while (true) {
        ValueAst::KeyVal kv;
        kv.key = expect_quoted("attribute name");
        expect_kind(Tok::Colon, ":");
        kv.value = parse_value();
        v.fields.push_back(std::move(kv));
        if (cur().kind == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      expect_kind(Tok::RBrace, "}");
      return v;
    }
    if (cur().kind == Tok::Number) {
      v.kind = ValueAst::Kind::Number;
      v.number = take().text;
      return v;
    }
    if (cur().kind == Tok::Quoted) {
      v.kind = ValueAst::Kind::Text;
      v.text = take().text;
      return v;
    }
    if (cur().kind == Tok::Word) {
      int line = cur().pos.line;
      std::vector<Token> text;
      while (cur().kind == Tok::Word && cur().pos.line == line) text.push_back(take());
      v.kind = ValueAst::Kind::Text;
      v.text = join_tokens(text);
      return v;
    }
    throw SyntaxError(cur().pos, "unexpected " + describe(cur()), "a value");
  }

  TokenStream ts_;
  size_t pos_;
};

}  // namespace

SpecSuiteAst parse_spec(const std::string& source) {
  Parser p(source);
  return p.parse_spec_suite();
}

TestCaseAst parse_testcase(const std::string& source) {
  Parser p(source);
  return p.parse_test_case();
}

StepAst parse_step_text(const std::string& text, StepDir dir) {
  Parser p(text);
  return p.parse_step_fragment(dir);
}

}  // namespace pickles

#include "pickles/translate.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pickles/diagnostics.hpp"
#include "pickles/parser.hpp"

using namespace pickles;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing fixture " << path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string kSuitePath = std::string(PICKLES_DATA_DIR) + "/traffic_control.pickles";
const std::string kTestPath = std::string(PICKLES_DATA_DIR) + "/traffic_control_test.pickles";

TranslationResult translated_fixture() {
  return translate_suite(parse_spec(slurp(kSuitePath)));
}

// Guards compare modulo the canonical form, so spelled-out element
// quantifications and their count-based equivalents coincide.
bool guard_equiv(const TermPtr& a, const TermPtr& b) {
  return term_equal(normalize(a), normalize(b));
}

TermPtr str_const(const std::string& s) { return Term::constant(Value::string(s)); }
TermPtr int_const(std::int64_t i) { return Term::constant(Value::integer(i)); }
TermPtr dec_const(const std::string& s) {
  return Term::constant(Value::decimal(Decimal::parse(s)));
}

// One detector strictly inside the critical section: same lane, length
// position strictly between the section bounds.
TermPtr inside_pred() {
  TermPtr lane = Term::attr_get(Term::elem(0), "lane");
  TermPtr lp = Term::attr_get(Term::elem(0), "length position");
  TermPtr same_lane = Term::compare(CmpOp::Eq, lane, Term::loc_var("critical section lane"));
  TermPtr after_start =
      Term::compare(CmpOp::Lt, Term::loc_var("critical section start"), lp);
  TermPtr before_end = Term::compare(CmpOp::Lt, lp, Term::loc_var("critical section end"));
  return Term::connective(ConnOp::And, same_lane,
                          Term::connective(ConnOp::And, after_start, before_end));
}

TermPtr initial_guard() {
  TermPtr en = Term::compare(CmpOp::Eq, Term::loc_var("enabledness"),
                             Term::constant(Value::boolean(true)));
  TermPtr av =
      Term::compare(CmpOp::Eq, Term::loc_var("availability"), str_const("AV"));
  return Term::connective(ConnOp::And, en, av);
}

TermPtr detect_guard(CountCmp cmp, std::uint64_t count) {
  TermPtr counting =
      Term::count_where(Term::param("faulty detectors"), inside_pred(), cmp, count);
  return Term::connective(ConnOp::And, counting, initial_guard());
}

SpecSuiteAst tiny_suite(const std::string& body) {
  return parse_spec("Variable Settings\n" + body);
}

}  // namespace

TEST_CASE("the traffic-control suite translates into four primary systems") {
  TranslationResult tr = translated_fixture();
  REQUIRE(tr.primary.size() == 4);
  CHECK(tr.secondary.empty());
  CHECK(tr.context.bindings.size() == 6);
  REQUIRE(tr.context.gates.size() == 4);
  CHECK(tr.context.gates[0].name == "the controller detects");
  CHECK(tr.context.gates[0].direction == Direction::Input);
  CHECK(tr.context.gates[0].params == std::vector<std::string>{"faulty detectors"});
  CHECK(tr.context.gates[1].name == "the user interface displays");
  CHECK(tr.context.gates[1].direction == Direction::Output);
  CHECK(tr.context.gates[2].name == "the controller access is lost");
  CHECK(tr.context.gates[2].params.empty());
  CHECK(tr.context.gates[3].name == "the user interface reports status");
  CHECK(tr.context.attr_keys == std::set<std::string>{"lane", "length position"});

  for (int k = 0; k < 4; ++k) {
    const Sts& s = tr.primary[k];
    CHECK(s.ordinal == k + 1);
    REQUIRE(s.locations.size() == 3);
    CHECK(s.locations[0] == "s" + std::to_string(k + 1) + ".l1");
    CHECK(s.initial == s.locations[0]);
    REQUIRE(s.switches.size() == 2);
    CHECK(s.switches[0].source == s.locations[0]);
    CHECK(s.switches[0].target == s.locations[1]);
    CHECK(s.switches[1].target == s.locations[2]);
    CHECK(s.variables.size() == 6);
    CHECK(s.gates.size() == 4);
    CHECK(validate(s).empty());
  }
}

TEST_CASE("the detection guards count detectors inside the critical section") {
  TranslationResult tr = translated_fixture();
  CHECK(guard_equiv(tr.primary[0].switches[0].guard,
                    detect_guard(CountCmp::Exactly, 0)));
  CHECK(guard_equiv(tr.primary[1].switches[0].guard,
                    detect_guard(CountCmp::Exactly, 1)));
  CHECK(guard_equiv(tr.primary[2].switches[0].guard,
                    detect_guard(CountCmp::AtLeast, 2)));

  TermPtr en_only = Term::compare(CmpOp::Eq, Term::loc_var("enabledness"),
                                  Term::constant(Value::boolean(true)));
  CHECK(guard_equiv(tr.primary[3].switches[0].guard,
                    Term::connective(ConnOp::And, Term::boolean(true), en_only)));
}

TEST_CASE("the display guards constrain the announced parameter") {
  TranslationResult tr = translated_fixture();
  auto display_eq = [](const std::string& v) {
    return Term::compare(CmpOp::Eq, Term::param("availability"), str_const(v));
  };
  CHECK(guard_equiv(tr.primary[0].switches[1].guard, display_eq("AV")));
  CHECK(guard_equiv(tr.primary[1].switches[1].guard, display_eq("PART AV")));
  CHECK(guard_equiv(tr.primary[2].switches[1].guard, display_eq("NOT AV")));
  CHECK(guard_equiv(tr.primary[3].switches[1].guard,
                    Term::compare(CmpOp::Eq, Term::param("enabledness"),
                                  Term::constant(Value::boolean(false)))));
}

TEST_CASE("every switch stores its parameters and remembers its step") {
  TranslationResult tr = translated_fixture();
  const Switch& detect = tr.primary[0].switches[0];
  REQUIRE(detect.assignment.size() == 1);
  CHECK(detect.assignment[0].var == "faulty detectors");
  CHECK(term_equal(detect.assignment[0].term, Term::param("faulty detectors")));
  CHECK(detect.scenario == "01: faulty detectors outside the critical section");
  CHECK(detect.step_text.substr(0, 23) == "the controller detects ");
  CHECK(detect.step_text.find("such that:") != std::string::npos);
  CHECK(detect.step_text.back() != '\n');

  const Switch& display = tr.primary[1].switches[1];
  CHECK(display.direction == Direction::Output);
  REQUIRE(display.assignment.size() == 1);
  CHECK(display.assignment[0].var == "availability");
  CHECK(term_equal(display.assignment[0].term, Term::param("availability")));
  CHECK(display.step_text == "the user interface displays \"availability\" equal to PART AV");

  const Switch& lost = tr.primary[3].switches[0];
  CHECK(lost.assignment.empty());
  CHECK(lost.params.empty());
}

TEST_CASE("guard connectives give conjunction the tighter binding") {
  SpecSuiteAst suite = tiny_suite(
      "\"x\" is an integer with range [1,9]\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"x\" such that:\n"
      "  \"x\" is equal to 1 OR\n"
      "  \"x\" is equal to 2 AND\n"
      "  \"x\" is lower than 9\n"
      "Then the device halts\n");
  TranslationResult tr = translate_suite(suite);
  REQUIRE(tr.secondary.size() == 1);
  TermPtr px = Term::param("x");
  TermPtr expected = Term::connective(
      ConnOp::Or, Term::compare(CmpOp::Eq, px, int_const(1)),
      Term::connective(ConnOp::And, Term::compare(CmpOp::Eq, px, int_const(2)),
                       Term::compare(CmpOp::Lt, px, int_const(9))));
  CHECK(term_equal(tr.secondary[0].switches[0].guard, expected));
}

TEST_CASE("between and range right-hand sides expand to comparisons") {
  SpecSuiteAst suite = tiny_suite(
      "\"x\" is an integer with range [1,9]\n"
      "\"d\" is a decimal with range [1.0,9.0]\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"x\", \"d\" such that:\n"
      "  \"x\" is between 2 and 5 AND\n"
      "  \"x\" is equal to {1, 5} AND\n"
      "  \"x\" is not equal to {7, 8} AND\n"
      "  \"d\" is equal to (1.0,2.0]\n"
      "Then the device halts\n");
  TranslationResult tr = translate_suite(suite);
  TermPtr px = Term::param("x");
  TermPtr pd = Term::param("d");
  TermPtr between = Term::connective(ConnOp::And, Term::compare(CmpOp::Ge, px, int_const(2)),
                                     Term::compare(CmpOp::Le, px, int_const(5)));
  TermPtr in_set = Term::connective(ConnOp::Or, Term::compare(CmpOp::Eq, px, int_const(1)),
                                    Term::compare(CmpOp::Eq, px, int_const(5)));
  TermPtr not_in = Term::connective(ConnOp::And, Term::compare(CmpOp::Ne, px, int_const(7)),
                                    Term::compare(CmpOp::Ne, px, int_const(8)));
  TermPtr in_iv =
      Term::connective(ConnOp::And, Term::compare(CmpOp::Gt, pd, dec_const("1.0")),
                       Term::compare(CmpOp::Le, pd, dec_const("2.0")));
  TermPtr expected = Term::connective(
      ConnOp::And,
      Term::connective(ConnOp::And, Term::connective(ConnOp::And, between, in_set), not_in),
      in_iv);
  CHECK(term_equal(tr.secondary[0].switches[0].guard, expected));
}

TEST_CASE("stored references stay location variables inside input guards") {
  SpecSuiteAst suite = tiny_suite(
      "\"x\" is an integer with range [1,9]\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"x\" such that:\n"
      "  stored \"x\" is lower than \"x\"\n"
      "Then the device halts\n");
  TranslationResult tr = translate_suite(suite);
  TermPtr expected =
      Term::compare(CmpOp::Lt, Term::loc_var("x"), Term::param("x"));
  CHECK(term_equal(tr.secondary[0].switches[0].guard, expected));
}

TEST_CASE("gate parameters follow the declaration order of the settings") {
  SpecSuiteAst suite = tiny_suite(
      "\"a\" is an integer with range [1,3]\n"
      "\"b\" is an integer with range [1,3]\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"b\", \"a\"\n"
      "Then the device halts\n");
  TranslationResult tr = translate_suite(suite);
  const Gate* g = tr.context.find_gate("the device reads");
  REQUIRE(g != nullptr);
  CHECK(g->params == std::vector<std::string>{"a", "b"});
  CHECK(tr.secondary[0].switches[0].params == g->params);
}

TEST_CASE("ill-typed suites are rejected") {
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range {1, 2, 3}\n")),
                  SemanticError);
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range (1,3]\n")),
                  SemanticError);
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range [1,9]\n"
                      "\"x\" is a boolean with range {true, false}\n")),
                  SemanticError);
  // Attribute keys and variable names share one namespace.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"lane\" is an integer with range [1,3]\n"
                      "\"d\" is a structure with attributes \"lane\" such that:\n"
                      "  \"lane\" is an integer with range [1,3]\n")),
                  SemanticError);
  // Unknown variable in a guard.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range [1,9]\n"
                      "\n"
                      "Scenario 01: sample\n"
                      "When the device reads \"x\" such that:\n"
                      "  \"y\" is equal to 1\n"
                      "Then the device halts\n")),
                  SemanticError);
  // One action cannot read and announce.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range [1,9]\n"
                      "\n"
                      "Scenario 01: sample\n"
                      "When the device pings\n"
                      "Then the device shows \"x\" equal to 1\n"
                      "\n"
                      "Scenario 02: sample\n"
                      "When the device shows \"x\"\n"
                      "Then the device halts\n")),
                  SemanticError);
  // One action, one parameter list.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"x\" is an integer with range [1,9]\n"
                      "\n"
                      "Scenario 01: sample\n"
                      "When the device reads \"x\"\n"
                      "Then the device halts\n"
                      "\n"
                      "Scenario 02: sample\n"
                      "When the device reads\n"
                      "Then the device halts\n")),
                  SemanticError);
  // Booleans admit no ordering.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"e\" is a boolean with range {true, false}\n"
                      "\n"
                      "Scenario 01: sample\n"
                      "When the device reads \"e\" such that:\n"
                      "  \"e\" is greater than 1\n"
                      "Then the device halts\n")),
                  SemanticError);
  // Comparing variables of different types.
  CHECK_THROWS_AS(translate_suite(tiny_suite(
                      "\"e\" is a boolean with range {true, false}\n"
                      "\"n\" is an integer with range [1,9]\n"
                      "\n"
                      "Scenario 01: sample\n"
                      "When the device reads \"e\" such that:\n"
                      "  \"e\" is equal to \"n\"\n"
                      "Then the device halts\n")),
                  SemanticError);
}

TEST_CASE("values decode against their domains") {
  TranslationResult tr = translated_fixture();
  const Domain& fd = tr.context.find_binding("faulty detectors")->domain;

  ValueAst lane;
  lane.kind = ValueAst::Kind::Number;
  lane.number = "2";
  ValueAst lp;
  lp.kind = ValueAst::Kind::Number;
  lp.number = "1.6";
  // Attribute order in the text is free; decoded structs follow the
  // declared order.
  ValueAst det;
  det.kind = ValueAst::Kind::Struct;
  det.fields.push_back({"length position", lp});
  det.fields.push_back({"lane", lane});
  ValueAst arr;
  arr.kind = ValueAst::Kind::Array;
  arr.items.push_back(det);

  Value v = value_from_ast(arr, fd);
  REQUIRE(v.elems().size() == 1);
  CHECK(v.elems()[0].fields()[0].key == "lane");
  CHECK(v.elems()[0].fields()[1].key == "length position");
  CHECK(v.elems()[0].field("length position")->as_decimal() == Decimal::parse("1.6"));

  ValueAst missing = det;
  missing.fields.pop_back();
  ValueAst arr2;
  arr2.kind = ValueAst::Kind::Array;
  arr2.items.push_back(missing);
  CHECK_THROWS_AS(value_from_ast(arr2, fd), SemanticError);

  const Domain& cl = tr.context.find_binding("critical section lane")->domain;
  ValueAst out_of_range;
  out_of_range.kind = ValueAst::Kind::Number;
  out_of_range.number = "7";
  CHECK_THROWS_AS(value_from_ast(out_of_range, cl), SemanticError);
  ValueAst fractional;
  fractional.kind = ValueAst::Kind::Number;
  fractional.number = "1.5";
  CHECK_THROWS_AS(value_from_ast(fractional, cl), SemanticError);
}

TEST_CASE("the fixture test case checks against the fixture suite") {
  TranslationResult tr = translated_fixture();
  TestCaseAst tc = parse_testcase(slurp(kTestPath));
  CHECK_NOTHROW(check_testcase(tc, tr.context));

  TestCaseAst wrong_action = tc;
  wrong_action.steps[0].action = "the controller misreads";
  CHECK_THROWS_AS(check_testcase(wrong_action, tr.context), SemanticError);

  TestCaseAst wrong_dir = tc;
  wrong_dir.steps[0].dir = StepDir::Out;
  wrong_dir.steps[0].has_values = false;
  wrong_dir.steps[0].values.clear();
  CHECK_THROWS_AS(check_testcase(wrong_dir, tr.context), SemanticError);

  TestCaseAst incomplete = tc;
  incomplete.init.pop_back();
  CHECK_THROWS_AS(check_testcase(incomplete, tr.context), SemanticError);
}

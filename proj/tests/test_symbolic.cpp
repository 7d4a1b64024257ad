#include "pickles/symbolic.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pickles/compose.hpp"
#include "pickles/diagnostics.hpp"
#include "pickles/parser.hpp"
#include "pickles/prune.hpp"
#include "pickles/translate.hpp"

using namespace pickles;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing fixture " << path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TranslationResult fixture() {
  std::string path = std::string(PICKLES_DATA_DIR) + "/traffic_control.pickles";
  return translate_suite(parse_spec(slurp(path)));
}

std::vector<Decimal> decs(std::initializer_list<const char*> xs) {
  std::vector<Decimal> out;
  for (const char* x : xs) out.push_back(Decimal::parse(x));
  return out;
}

// The case-study plan: derived samples for every decimal path, then the
// richer length-position set laid over it.
SamplingPlan case_plan(const Sts& s) {
  SamplingPlan plan = default_sampling_plan(s);
  SamplingPlan file;
  file.samples["faulty detectors/length position"] = decs({"1.001", "1.6", "1.9", "2.999"});
  plan.merge_overrides(file);
  return plan;
}

Valuation to_valuation(const Sts& s, const SymbolicPath& sp, const Solution& sol) {
  Valuation val;
  for (std::size_t i = 0; i < s.variables.size(); ++i)
    val[{VarKey::Kind::LocationVar, s.variables[i].id, -1}] = sol.ini[i];
  for (std::size_t j = 0; j < sp.switches.size(); ++j) {
    const Switch& sw = s.switches[sp.switches[j]];
    for (std::size_t i = 0; i < sw.params.size(); ++i)
      val[{VarKey::Kind::Parameter, sw.params[i], static_cast<int>(j)}] =
          sol.step_values[j][i];
  }
  return val;
}

std::map<std::string, Value> fixed_geometry() {
  return {{"availability", Value::string("AV")},
          {"enabledness", Value::boolean(true)},
          {"critical section lane", Value::integer(1)},
          {"critical section start", Value::decimal(Decimal::parse("1.5"))},
          {"critical section end", Value::decimal(Decimal::parse("2.0"))}};
}

}  // namespace

TEST_CASE("a path condition conjoins guards over initial copies") {
  TranslationResult tr = fixture();
  const Sts& s4 = tr.primary[3];

  SymbolicPath sp = path_condition(s4, {0, 1});
  TermPtr en_true = Term::compare(CmpOp::Eq, Term::loc_var("enabledness"),
                                  Term::constant(Value::boolean(true)));
  TermPtr report_false = Term::compare(CmpOp::Eq, Term::param("enabledness", 1),
                                       Term::constant(Value::boolean(false)));
  TermPtr expected = Term::connective(
      ConnOp::And, Term::connective(ConnOp::And, Term::boolean(true), en_true),
      report_false);
  CHECK(term_equal(normalize(sp.condition), normalize(expected)));

  CHECK(term_equal(path_condition(s4, {}).condition, Term::boolean(true)));
  CHECK_THROWS_AS(path_condition(s4, {1}), InternalError);
}

TEST_CASE("assignments thread parameter values into later guards") {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 2);

  // Scenario 01 in full, then the glue copy of Scenario 02's input.
  std::vector<std::size_t> path;
  path.push_back(master.outgoing(master.initial)[0]);
  std::string at = master.switches[path[0]].target;
  path.push_back(master.outgoing(at)[0]);
  at = master.switches[path[1]].target;
  std::size_t third = 0;
  bool found = false;
  for (std::size_t idx : master.outgoing(at)) {
    if (master.switches[idx].scenario.substr(0, 2) == "02") {
      third = idx;
      found = true;
      break;
    }
  }
  REQUIRE(found);
  path.push_back(third);

  SymbolicPath sp = path_condition(master, path);
  std::set<VarKey> vars = free_vars(sp.condition);
  // The initial copies the guards read, plus one instance per step
  // parameter; the detector array's initial copy is never read.
  std::set<VarKey> expected{
      {VarKey::Kind::LocationVar, "availability", -1},
      {VarKey::Kind::LocationVar, "enabledness", -1},
      {VarKey::Kind::LocationVar, "critical section lane", -1},
      {VarKey::Kind::LocationVar, "critical section start", -1},
      {VarKey::Kind::LocationVar, "critical section end", -1},
      {VarKey::Kind::Parameter, "faulty detectors", 0},
      {VarKey::Kind::Parameter, "availability", 1},
      {VarKey::Kind::Parameter, "faulty detectors", 2},
  };
  CHECK(vars == expected);
}

TEST_CASE("the lost-access scenario has one boolean solution") {
  TranslationResult tr = fixture();
  const Sts& s4 = tr.primary[3];
  BoundedSolver solver(case_plan(s4));

  SymbolicPath sp = path_condition(s4, {0, 1});
  std::optional<Solution> sol = solver.solve(s4, sp);
  REQUIRE(sol.has_value());
  CHECK(sol->ini[1] == Value::boolean(true));  // enabledness
  REQUIRE(sol->step_values.size() == 2);
  CHECK(sol->step_values[0].empty());
  REQUIRE(sol->step_values[1].size() == 1);
  CHECK(sol->step_values[1][0] == Value::boolean(false));
  CHECK(evaluate_bool(sp.condition, to_valuation(s4, sp, *sol)));
}

TEST_CASE("contradictory guards are unsatisfiable") {
  SpecSuiteAst suite = parse_spec(
      "Variable Settings\n"
      "\"x\" is an integer with range [1,9]\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"x\" such that:\n"
      "  \"x\" is equal to 1 AND\n"
      "  \"x\" is equal to 2\n"
      "Then the device halts\n");
  TranslationResult tr = translate_suite(suite);
  const Sts& s = tr.secondary[0];
  BoundedSolver solver({});
  CHECK_FALSE(solver.solve(s, path_condition(s, {0})).has_value());
  CHECK(solver.solve(s, path_condition(s, {})).has_value());
}

TEST_CASE("a two-scenario run pins the intermediate display value") {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 2);
  BoundedSolver solver(case_plan(master));

  // Scenario 03 in full, then Scenario 04 across the seam.
  std::vector<std::size_t> path;
  for (std::size_t idx : master.outgoing(master.initial))
    if (master.switches[idx].scenario.substr(0, 2) == "03") path.push_back(idx);
  REQUIRE(path.size() == 1);
  std::string at = master.switches[path[0]].target;
  path.push_back(master.outgoing(at)[0]);
  at = master.switches[path[1]].target;
  for (std::size_t idx : master.outgoing(at))
    if (master.switches[idx].scenario.substr(0, 2) == "04") {
      path.push_back(idx);
      break;
    }
  REQUIRE(path.size() == 3);
  at = master.switches[path[2]].target;
  path.push_back(master.outgoing(at)[0]);

  SymbolicPath sp = path_condition(master, path);
  std::optional<Solution> sol = solver.solve(master, sp);
  REQUIRE(sol.has_value());
  CHECK(sol->ini[0] == Value::string("AV"));
  CHECK(sol->ini[1] == Value::boolean(true));
  // At least two detectors inside the critical section at step 0.
  CHECK(sol->step_values[0][0].elems().size() >= 2);
  CHECK(sol->step_values[1][0] == Value::string("NOT AV"));
  CHECK(sol->step_values[3][0] == Value::boolean(false));

  Valuation val = to_valuation(master, sp, *sol);
  CHECK(evaluate_bool(sp.condition, val));
  // A solution of the full path satisfies every prefix too.
  for (std::size_t len = 0; len <= path.size(); ++len) {
    std::vector<std::size_t> prefix(path.begin(), path.begin() + len);
    CHECK(evaluate_bool(path_condition(master, prefix).condition, val));
  }
}

TEST_CASE("input counting matches the documented case-study figures") {
  TranslationResult tr = fixture();
  SamplingPlan plan;
  plan.samples["faulty detectors/length position"] =
      decs({"1.001", "1.6", "1.9", "2.999"});
  std::map<std::string, Value> fixed = fixed_geometry();

  CHECK(count_satisfying_inputs(tr.primary[0], tr.primary[0].switches[0], fixed, plan) ==
        175);
  CHECK(count_satisfying_inputs(tr.primary[1], tr.primary[1].switches[0], fixed, plan) ==
        112);
  CHECK(count_satisfying_inputs(tr.primary[2], tr.primary[2].switches[0], fixed, plan) ==
        11);
  CHECK(count_satisfying_inputs(tr.primary[3], tr.primary[3].switches[0], fixed, plan) ==
        1);

  CHECK_THROWS_AS(
      count_satisfying_inputs(tr.primary[0], tr.primary[0].switches[1], fixed, plan),
      SemanticError);
  CHECK_THROWS_AS(
      count_satisfying_inputs(tr.primary[0], tr.primary[0].switches[0], {}, plan),
      SemanticError);
}

TEST_CASE("derived samples bracket each interval and its guard constants") {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 3);
  SamplingPlan plan = default_sampling_plan(master);

  REQUIRE(plan.samples.size() == 3);
  CHECK(plan.samples.at("critical section start") == decs({"1.001", "2.999"}));
  CHECK(plan.samples.at("critical section end") == decs({"1.001", "2.999"}));
  CHECK(plan.samples.at("faulty detectors/length position") == decs({"1.001", "2.999"}));

  SpecSuiteAst suite = parse_spec(
      "Variable Settings\n"
      "\"d\" is a decimal with range (1.0,3.0)\n"
      "\n"
      "Scenario 01: sample\n"
      "When the device reads \"d\" such that:\n"
      "  \"d\" is greater than 1.5 AND\n"
      "  \"d\" is lower than 2.0\n"
      "Then the device halts\n");
  Sts s = translate_suite(suite).secondary[0];
  SamplingPlan derived = default_sampling_plan(s);
  CHECK(derived.samples.at("d") ==
        decs({"1.001", "1.25", "1.5", "1.75", "2.0", "2.5", "2.999"}));
}

TEST_CASE("the pruned master keeps the satisfiable core") {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 3);
  BoundedSolver solver(case_plan(master));

  PruneReport report;
  Sts pruned = prune(master, solver, &report);
  CHECK(pruned.locations.size() == 25);
  CHECK(pruned.switches.size() == 28);
  CHECK(report.kept_switches == 28);
  CHECK(report.removed_switches.size() == 52);
  CHECK(report.removed_locations.size() == 12);
  CHECK(report.unreachable_scenarios.empty());
  CHECK(validate(pruned).empty());

  Sts again = prune(pruned, solver);
  CHECK(again.locations == pruned.locations);
  CHECK(again.switches.size() == pruned.switches.size());
  for (std::size_t i = 0; i < again.switches.size(); ++i)
    CHECK(again.switches[i].brief() == pruned.switches[i].brief());
}

TEST_CASE("without richer samples the inside-section scenarios drop out") {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 3);
  BoundedSolver solver(default_sampling_plan(master));

  PruneReport report;
  Sts pruned = prune(master, solver, &report);
  REQUIRE(report.unreachable_scenarios.size() == 2);
  CHECK(report.unreachable_scenarios[0].substr(0, 2) == "02");
  CHECK(report.unreachable_scenarios[1].substr(0, 2) == "03");
  for (const PruneReport::RemovedSwitch& rs : report.removed_switches)
    if (rs.scenario.substr(0, 2) == "02" && rs.brief.find("ini.l0") != std::string::npos)
      CHECK(rs.sampling_sensitive);
}

TEST_CASE("pruning an all-true system changes nothing") {
  TranslationResult tr = fixture();
  Sts s1 = tr.primary[0];
  for (Switch& sw : s1.switches) sw.guard = Term::boolean(true);
  BoundedSolver solver(case_plan(s1));
  PruneReport report;
  Sts pruned = prune(s1, solver, &report);
  CHECK(pruned.locations == s1.locations);
  CHECK(pruned.switches.size() == s1.switches.size());
  CHECK(report.removed_switches.empty());
}

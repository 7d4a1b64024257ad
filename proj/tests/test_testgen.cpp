#include "pickles/testgen.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pickles/compose.hpp"
#include "pickles/diagnostics.hpp"
#include "pickles/parser.hpp"
#include "pickles/prune.hpp"
#include "pickles/translate.hpp"
#include "random_sts.hpp"

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

SamplingPlan case_plan(const Sts& s) {
  SamplingPlan plan = default_sampling_plan(s);
  SamplingPlan file;
  std::vector<Decimal> lp;
  for (const char* x : {"1.001", "1.6", "1.9", "2.999"}) lp.push_back(Decimal::parse(x));
  file.samples["faulty detectors/length position"] = lp;
  plan.merge_overrides(file);
  return plan;
}

struct CaseStudy {
  Sts pruned;
  BoundedSolver solver;
};

CaseStudy case_study() {
  TranslationResult tr = fixture();
  Sts master = master_model(tr.primary, tr.primary, 3);
  BoundedSolver solver(case_plan(master));
  return CaseStudy{prune(master, solver), BoundedSolver(case_plan(master))};
}

// The scenario ordinal of every input step along the test, read off the
// two-digit scenario titles.
std::vector<int> chain_of(const FormalTestCase& tc, const Sts& s) {
  std::vector<int> chain;
  for (std::size_t j = 0; j < tc.switches.size(); j += 2)
    chain.push_back(std::stoi(s.switches[tc.switches[j]].scenario.substr(0, 2)));
  return chain;
}

}  // namespace

TEST_CASE("the pruned case-study master is covered by ten tests") {
  CaseStudy cs = case_study();
  std::vector<FormalTestCase> tests = generate_switch_coverage(cs.pruned, cs.solver);

  CHECK(tests.size() == 10);
  CoverageReport report = coverage_of(tests, cs.pruned);
  CHECK(report.total == 28);
  CHECK(report.covered.size() == 28);
  CHECK(report.ratio == doctest::Approx(1.0));
  CHECK(report.traces.size() == 10);

  for (const FormalTestCase& tc : tests) {
    REQUIRE(!tc.switches.empty());
    CHECK(cs.pruned.switches[tc.switches[0]].source == cs.pruned.initial);
    for (std::size_t j = 0; j + 1 < tc.switches.size(); ++j)
      CHECK(cs.pruned.switches[tc.switches[j]].target ==
            cs.pruned.switches[tc.switches[j + 1]].source);
    for (std::size_t j = 0; j < tc.switches.size(); ++j) {
      Direction want = j % 2 == 0 ? Direction::Input : Direction::Output;
      CHECK(cs.pruned.switches[tc.switches[j]].direction == want);
    }
  }
}

TEST_CASE("generated tests walk the expected scenario chains") {
  CaseStudy cs = case_study();
  std::vector<FormalTestCase> tests = generate_switch_coverage(cs.pruned, cs.solver);

  std::set<std::vector<int>> chains;
  for (const FormalTestCase& tc : tests) chains.insert(chain_of(tc, cs.pruned));

  // Scenario 04 disables the controller, so nothing follows it; scenarios
  // 02 and 03 leave partial or no availability, which only scenario 04
  // tolerates afterwards.
  std::set<std::vector<int>> expected{{1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {1, 2, 4},
                                      {1, 3, 4}, {1, 4},    {2, 4},    {3, 4},    {4}};
  CHECK(chains == expected);
}

TEST_CASE("every generated test replays against the assignment semantics") {
  CaseStudy cs = case_study();
  std::vector<FormalTestCase> tests = generate_switch_coverage(cs.pruned, cs.solver);

  for (const FormalTestCase& tc : tests) {
    REQUIRE(tc.ini.size() == cs.pruned.variables.size());
    REQUIRE(tc.values.size() == tc.switches.size());
    for (std::size_t i = 0; i < tc.ini.size(); ++i)
      CHECK(domain_contains(cs.pruned.variables[i].domain, tc.ini[i]));

    Valuation state;
    for (std::size_t i = 0; i < cs.pruned.variables.size(); ++i)
      state[{VarKey::Kind::LocationVar, cs.pruned.variables[i].id, -1}] = tc.ini[i];

    for (std::size_t j = 0; j < tc.switches.size(); ++j) {
      const Switch& sw = cs.pruned.switches[tc.switches[j]];
      REQUIRE(tc.values[j].size() == sw.params.size());
      Valuation with_params = state;
      for (std::size_t k = 0; k < sw.params.size(); ++k) {
        CHECK(domain_contains(cs.pruned.find_variable(sw.params[k])->domain, tc.values[j][k]));
        with_params[{VarKey::Kind::Parameter, sw.params[k], -1}] = tc.values[j][k];
      }
      CHECK_MESSAGE(evaluate_bool(sw.guard, with_params),
                    "guard fails at step " << j << " (" << sw.brief() << ")");
      apply_assignment(sw, tc.values[j], state);
    }
  }
}

TEST_CASE("a single-scenario master needs exactly one test") {
  TranslationResult tr = fixture();
  Sts lone = master_model({tr.primary[0]}, {tr.primary[0]}, 3);
  BoundedSolver solver(case_plan(lone));

  std::vector<FormalTestCase> tests = generate_switch_coverage(lone, solver);
  REQUIRE(tests.size() == 1);
  CHECK(tests[0].switches.size() == 6);
  CoverageReport report = coverage_of(tests, lone);
  CHECK(report.covered.size() == 6);
  CHECK(report.ratio == doctest::Approx(1.0));
}

TEST_CASE("isolated first-round tests cover eight switches") {
  CaseStudy cs = case_study();

  std::vector<FormalTestCase> isolated;
  for (std::size_t detect : cs.pruned.outgoing(cs.pruned.initial)) {
    std::vector<std::size_t> outs =
        cs.pruned.outgoing(cs.pruned.switches[detect].target);
    REQUIRE(outs.size() == 1);
    std::vector<std::size_t> path{detect, outs[0]};
    std::optional<Solution> sol = cs.solver.solve(cs.pruned, path_condition(cs.pruned, path));
    REQUIRE(sol.has_value());
    isolated.push_back(FormalTestCase{path, sol->ini, sol->step_values});
  }
  REQUIRE(isolated.size() == 4);

  CoverageReport report = coverage_of(isolated, cs.pruned);
  CHECK(report.covered.size() == 8);
  CHECK(report.total == 28);
  CHECK(report.ratio == doctest::Approx(8.0 / 28.0));
}

TEST_CASE("generation is reproducible") {
  CaseStudy cs = case_study();
  std::vector<FormalTestCase> a = generate_switch_coverage(cs.pruned, cs.solver);
  std::vector<FormalTestCase> b = generate_switch_coverage(cs.pruned, cs.solver);

  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].switches == b[i].switches);
    CHECK(a[i].ini == b[i].ini);
    CHECK(a[i].values == b[i].values);
  }
}

TEST_CASE("a length bound below the horizon leaves switches uncovered") {
  CaseStudy cs = case_study();
  CHECK_THROWS_AS(generate_switch_coverage(cs.pruned, cs.solver, 2), InternalError);
}

TEST_CASE("an unsatisfiable switch is an internal inconsistency") {
  Sts s;
  s.name = "stuck";
  s.locations = {"stuck.q0", "stuck.q1"};
  s.initial = "stuck.q0";
  s.variables = testing::shared_variables();
  s.gates = testing::shared_gates();

  Switch ok;
  ok.source = "stuck.q0";
  ok.gate = "tick";
  ok.guard = Term::boolean(true);
  ok.target = "stuck.q1";
  ok.direction = Direction::Input;
  s.switches.push_back(ok);

  Switch stuck = ok;
  stuck.guard = Term::connective(
      ConnOp::And,
      Term::compare(CmpOp::Eq, Term::loc_var("x"), Term::constant(Value::integer(0))),
      Term::compare(CmpOp::Eq, Term::loc_var("x"), Term::constant(Value::integer(1))));
  s.switches.push_back(stuck);

  BoundedSolver solver(default_sampling_plan(s));
  CHECK_THROWS_AS(generate_switch_coverage(s, solver), InternalError);
}

TEST_CASE("coverage rejects foreign switch ids") {
  TranslationResult tr = fixture();
  const Sts& s1 = tr.primary[0];
  FormalTestCase bogus;
  bogus.switches = {99};
  CHECK_THROWS_AS(coverage_of({bogus}, s1), SemanticError);
  CHECK(coverage_of({}, s1).ratio == doctest::Approx(0.0));
  CHECK(coverage_of({}, Sts{}).ratio == doctest::Approx(1.0));
}

#include "pickles/conformance.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pickles/compose.hpp"
#include "pickles/parser.hpp"
#include "pickles/prune.hpp"
#include "pickles/render.hpp"

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

// The rendered case-study suite with full switch coverage.
std::vector<std::string> rendered_suite(const TranslationResult& tr) {
  Sts master = master_model(tr.primary, tr.primary, 3);
  BoundedSolver solver(case_plan(master));
  Sts pruned = prune(master, solver);
  std::vector<std::string> suite;
  for (const FormalTestCase& tc : generate_switch_coverage(pruned, solver))
    suite.push_back(render_test(tc, pruned));
  return suite;
}

int failing_tests(const std::vector<std::string>& suite, SutAdapter& sut,
                  const SuiteContext& ctx) {
  int n = 0;
  for (const std::string& text : suite)
    if (!run_test(text, sut, ctx).pass) ++n;
  return n;
}

// Replays canned outputs regardless of the inputs it receives.
class ScriptedSut : public SutAdapter {
 public:
  explicit ScriptedSut(std::vector<Output> outputs) : outputs_(std::move(outputs)) {}

  void reset(const std::map<std::string, Value>&) override { next_ = 0; }
  void apply_input(const std::string&, const std::vector<Value>&) override {}
  std::optional<Output> await_output() override {
    if (next_ >= outputs_.size()) return std::nullopt;
    return outputs_[next_++];
  }

 private:
  std::vector<Output> outputs_;
  std::size_t next_ = 0;
};

class BrokenSut : public SutAdapter {
 public:
  void reset(const std::map<std::string, Value>&) override {}
  void apply_input(const std::string&, const std::vector<Value>&) override {
    throw std::runtime_error("pipe closed");
  }
  std::optional<Output> await_output() override { return std::nullopt; }
};

const char* kInitBlock =
    "Given the system is initialized with values:\n"
    "    \"availability\": AV\n"
    "    \"enabledness\": true\n"
    "    \"faulty detectors\":\n"
    "        1: {\"lane\": 2, \"length position\": 1.5}\n"
    "    \"critical section lane\": 1\n"
    "    \"critical section start\": 1.5\n"
    "    \"critical section end\": 2.0\n";

std::string access_lost_test() {
  return std::string(kInitBlock) +
         "When the controller access is lost\n"
         "Then the user interface reports status \"enabledness\" equal to false\n";
}

}  // namespace

TEST_CASE("a corrected variant of the shipped example passes the reference") {
  TranslationResult tr = fixture();
  std::string text = slurp(std::string(PICKLES_DATA_DIR) + "/traffic_control_test.pickles");

  // As shipped, only one detector lies strictly inside (2.0; 2.5), so the
  // component answers PART AV where the file expects NOT AV.
  ReferenceSut sut;
  Verdict shipped = run_test(text, sut, tr.context);
  CHECK(!shipped.pass);
  CHECK(shipped.step == 1);
  CHECK(shipped.reason == Verdict::Reason::GuardViolated);
  CHECK(shipped.observed.find("PART AV") != std::string::npos);

  // Moving the second detector inside (2.8 -> 2.3) makes two of them count.
  std::string corrected = text;
  corrected.replace(corrected.find("2.8"), 3, "2.3");
  Verdict fixed = run_test(corrected, sut, tr.context);
  CHECK(fixed.pass);
  CHECK(fixed.str() == "pass");
}

TEST_CASE("the generated suite passes the reference implementation") {
  TranslationResult tr = fixture();
  std::vector<std::string> suite = rendered_suite(tr);
  REQUIRE(suite.size() == 10);

  ReferenceSut sut;
  for (const std::string& text : suite) {
    Verdict v = run_test(text, sut, tr.context);
    CHECK_MESSAGE(v.pass, v.str());
  }
}

TEST_CASE("every seeded fault is caught by the generated suite") {
  TranslationResult tr = fixture();
  std::vector<std::string> suite = rendered_suite(tr);

  ReferenceSut faithful;
  CHECK(failing_tests(suite, faithful, tr.context) == 0);

  // One fault per output rule; the failure counts follow from how many
  // test chains exercise each scenario.
  ReferenceSut m1(ReferenceSut::Fault::NoneInsideReportsPartial);
  ReferenceSut m2(ReferenceSut::Fault::OneInsideReportsFull);
  ReferenceSut m3(ReferenceSut::Fault::ManyInsideReportsFull);
  ReferenceSut m4(ReferenceSut::Fault::LostAccessKeepsEnabled);
  CHECK(failing_tests(suite, m1, tr.context) == 7);
  CHECK(failing_tests(suite, m2, tr.context) == 3);
  CHECK(failing_tests(suite, m3, tr.context) == 3);
  CHECK(failing_tests(suite, m4, tr.context) == 7);
}

TEST_CASE("verdicts report the first violation") {
  TranslationResult tr = fixture();
  std::string text = access_lost_test();

  ScriptedSut right({{"the user interface reports status", {Value::boolean(false)}}});
  CHECK(run_test(text, right, tr.context).pass);

  ScriptedSut lying({{"the user interface reports status", {Value::boolean(true)}}});
  Verdict v = run_test(text, lying, tr.context);
  CHECK(!v.pass);
  CHECK(v.step == 1);
  CHECK(v.reason == Verdict::Reason::GuardViolated);
  CHECK(v.str().find("condition violated") != std::string::npos);
  CHECK(v.str().find("enabledness = true") != std::string::npos);

  // A wrong action wins over its values: the gate is checked first.
  ScriptedSut chatty({{"the user interface displays", {Value::string("AV")}}});
  v = run_test(text, chatty, tr.context);
  CHECK(!v.pass);
  CHECK(v.reason == Verdict::Reason::WrongGate);
  CHECK(v.expected == "the user interface reports status");
  CHECK(v.observed == "the user interface displays");

  ScriptedSut mute({});
  v = run_test(text, mute, tr.context);
  CHECK(!v.pass);
  CHECK(v.step == 1);
  CHECK(v.reason == Verdict::Reason::Timeout);
  CHECK(v.str().find("no output") != std::string::npos);

  BrokenSut broken;
  v = run_test(text, broken, tr.context);
  CHECK(!v.pass);
  CHECK(v.step == 0);
  CHECK(v.reason == Verdict::Reason::Timeout);
  CHECK(v.str().find("pipe closed") != std::string::npos);
}

TEST_CASE("observed outputs update the stored state") {
  TranslationResult tr = fixture();
  std::string text =
      std::string(kInitBlock) +
      "When the controller detects \"faulty detectors\" with values:\n"
      "    \"faulty detectors\":\n"
      "        1: {\"lane\": 2, \"length position\": 1.5}\n"
      "Then the user interface displays \"availability\" equal to PART AV\n"
      "When the controller detects \"faulty detectors\" with values:\n"
      "    \"faulty detectors\":\n"
      "        1: {\"lane\": 2, \"length position\": 1.5}\n"
      "Then the user interface displays \"availability\" equal to stored \"availability\"\n";

  // The second condition reads the stored availability, which the first
  // observation must have overwritten from AV to PART AV.
  ScriptedSut consistent({{"the user interface displays", {Value::string("PART AV")}},
                          {"the user interface displays", {Value::string("PART AV")}}});
  CHECK(run_test(text, consistent, tr.context).pass);

  ScriptedSut drifting({{"the user interface displays", {Value::string("PART AV")}},
                        {"the user interface displays", {Value::string("NOT AV")}}});
  Verdict v = run_test(text, drifting, tr.context);
  CHECK(!v.pass);
  CHECK(v.step == 3);
  CHECK(v.reason == Verdict::Reason::GuardViolated);
}

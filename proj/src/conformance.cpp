#include "pickles/conformance.hpp"

#include <exception>
#include <utility>

#include "pickles/parser.hpp"
#include "pickles/printer.hpp"
#include "pickles/term.hpp"

namespace pickles {

namespace {

Verdict failed(std::size_t step, Verdict::Reason reason, std::string expected,
               std::string observed) {
  Verdict v;
  v.pass = false;
  v.step = step;
  v.reason = reason;
  v.expected = std::move(expected);
  v.observed = std::move(observed);
  return v;
}

std::string values_text(const std::vector<std::string>& params,
                        const std::vector<Value>& values) {
  std::string out;
  for (std::size_t i = 0; i < params.size() && i < values.size(); ++i)
    out += (out.empty() ? "" : ", ") + params[i] + " = " + values[i].str();
  return out.empty() ? "(none)" : out;
}

std::string step_line(const StepAst& step) {
  std::string text = print_step_body(step);
  std::size_t cut = text.find('\n');
  return cut == std::string::npos ? text : text.substr(0, cut);
}

}  // namespace

std::string Verdict::str() const {
  if (pass) return "pass";
  std::string out = "fail at step " + std::to_string(step + 1) + ": ";
  switch (reason) {
    case Reason::GuardViolated:
      out += "condition violated; expected '" + expected + "', observed " + observed;
      break;
    case Reason::WrongGate:
      out += "wrong action; expected '" + expected + "', observed '" + observed + "'";
      break;
    case Reason::Timeout:
      out += "no output for '" + expected + "'";
      if (!observed.empty()) out += " (" + observed + ")";
      break;
    case Reason::None: out += "unspecified"; break;
  }
  return out;
}

Verdict run_test(const std::string& text, SutAdapter& adapter, const SuiteContext& ctx) {
  TestCaseAst tc = parse_testcase(text);
  check_testcase(tc, ctx);

  std::map<std::string, Value> state;
  for (const ValueDefAst& def : tc.init)
    state[def.var] = value_from_ast(def.value, ctx.find_binding(def.var)->domain);

  try {
    adapter.reset(state);
  } catch (const std::exception& e) {
    return failed(0, Verdict::Reason::Timeout, "reset", e.what());
  }

  for (std::size_t j = 0; j < tc.steps.size(); ++j) {
    const StepAst& step = tc.steps[j];
    const Gate* gate = ctx.find_gate(step.action);

    if (step.dir == StepDir::In) {
      std::vector<Value> values;
      for (const std::string& p : gate->params) {
        for (const ValueDefAst& def : step.values) {
          if (def.var != p) continue;
          values.push_back(value_from_ast(def.value, ctx.find_binding(p)->domain));
          break;
        }
      }
      try {
        adapter.apply_input(step.action, values);
      } catch (const std::exception& e) {
        return failed(j, Verdict::Reason::Timeout, step.action, e.what());
      }
      for (std::size_t k = 0; k < gate->params.size(); ++k)
        state[gate->params[k]] = values[k];
      continue;
    }

    std::optional<SutAdapter::Output> out;
    try {
      out = adapter.await_output();
    } catch (const std::exception& e) {
      return failed(j, Verdict::Reason::Timeout, step.action, e.what());
    }
    if (!out.has_value()) return failed(j, Verdict::Reason::Timeout, step.action, "");
    if (out->gate != step.action)
      return failed(j, Verdict::Reason::WrongGate, step.action, out->gate);
    if (out->values.size() != gate->params.size())
      return failed(j, Verdict::Reason::WrongGate, step.action,
                    out->gate + " with " + std::to_string(out->values.size()) + " values");

    TermPtr guard = step.guard ? map_guard_block(*step.guard, ctx, GuardPosition::Step,
                                                 gate->params)
                               : Term::boolean(true);
    Valuation val;
    for (const auto& [id, v] : state) val[{VarKey::Kind::LocationVar, id, -1}] = v;
    for (std::size_t k = 0; k < gate->params.size(); ++k)
      val[{VarKey::Kind::Parameter, gate->params[k], -1}] = out->values[k];
    if (!evaluate_bool(guard, val))
      return failed(j, Verdict::Reason::GuardViolated, step_line(step),
                    values_text(gate->params, out->values));

    for (std::size_t k = 0; k < gate->params.size(); ++k)
      state[gate->params[k]] = out->values[k];
  }
  return {};
}

void ReferenceSut::reset(const std::map<std::string, Value>& ini) {
  availability_ = ini.at("availability").as_string();
  enabled_ = ini.at("enabledness").as_bool();
  lane_ = ini.at("critical section lane").as_int();
  section_lo_ = ini.at("critical section start").as_decimal();
  section_hi_ = ini.at("critical section end").as_decimal();
  pending_.clear();
}

void ReferenceSut::apply_input(const std::string& gate, const std::vector<Value>& values) {
  if (gate == "the controller detects") {
    if (!enabled_) return;  // a disabled controller ignores detector reports
    int inside = 0;
    for (const Value& d : values.at(0).elems()) {
      if (d.field("lane")->as_int() != lane_) continue;
      const Decimal& at = d.field("length position")->as_decimal();
      if (section_lo_ < at && at < section_hi_) ++inside;
    }
    if (inside == 0)
      availability_ = fault_ == Fault::NoneInsideReportsPartial ? "PART AV" : "AV";
    else if (inside == 1)
      availability_ = fault_ == Fault::OneInsideReportsFull ? "AV" : "PART AV";
    else
      availability_ = fault_ == Fault::ManyInsideReportsFull ? "AV" : "NOT AV";
    pending_.push_back({"the user interface displays", {Value::string(availability_)}});
    return;
  }
  if (gate == "the controller access is lost") {
    if (fault_ != Fault::LostAccessKeepsEnabled) enabled_ = false;
    pending_.push_back({"the user interface reports status", {Value::boolean(enabled_)}});
    return;
  }
  throw std::runtime_error("no input named '" + gate + "'");
}

std::optional<SutAdapter::Output> ReferenceSut::await_output() {
  // In-process and synchronous: an empty queue means nothing will arrive.
  if (pending_.empty()) return std::nullopt;
  Output out = std::move(pending_.front());
  pending_.pop_front();
  return out;
}

}  // namespace pickles

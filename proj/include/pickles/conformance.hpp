// Test execution against a system under test: the in-process adapter
// contract, the verdict type, and a reference implementation of the
// traffic control component with selectable seeded faults.
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pickles/translate.hpp"
#include "pickles/value.hpp"

namespace pickles {

// The binding a system under test must provide. Implementations own their
// await timeout (5 s is the conventional default for out-of-process
// bindings); await_output returns nullopt once that deadline passes.
class SutAdapter {
 public:
  struct Output {
    std::string gate;
    std::vector<Value> values;
  };

  virtual ~SutAdapter() = default;
  // Returns the SUT to its initial state holding the given stored values.
  virtual void reset(const std::map<std::string, Value>& ini) = 0;
  virtual void apply_input(const std::string& gate, const std::vector<Value>& values) = 0;
  virtual std::optional<Output> await_output() = 0;
};

struct Verdict {
  enum class Reason { None, GuardViolated, WrongGate, Timeout };

  bool pass = true;
  std::size_t step = 0;  // index of the first failing step
  Reason reason = Reason::None;
  std::string expected;
  std::string observed;

  std::string str() const;
};

// Parses and checks `text`, resets the adapter with the initialization
// values, then drives it strictly sequentially: input values are applied
// and stored, each expected output is awaited, its action compared, its
// condition evaluated with the observed values bound to the parameters and
// the stored state bound to the variables, and the observed values stored.
// The first violation decides the verdict; adapter exceptions count as
// timeouts.
Verdict run_test(const std::string& text, SutAdapter& adapter, const SuiteContext& ctx);

// In-process model of the traffic control component. Holds availability,
// enabledness, and the critical section geometry; a detector report drives
// the availability rule (none strictly inside the critical section: AV,
// exactly one: PART AV, more: NOT AV) and losing controller access
// disables the system. `Fault` seeds a defect in one output rule for
// mutation testing.
class ReferenceSut : public SutAdapter {
 public:
  enum class Fault {
    None,
    NoneInsideReportsPartial,  // no detector inside -> PART AV instead of AV
    OneInsideReportsFull,      // one detector inside -> AV instead of PART AV
    ManyInsideReportsFull,     // two or more inside -> AV instead of NOT AV
    LostAccessKeepsEnabled,    // access loss leaves the system enabled
  };

  explicit ReferenceSut(Fault fault = Fault::None) : fault_(fault) {}

  void reset(const std::map<std::string, Value>& ini) override;
  void apply_input(const std::string& gate, const std::vector<Value>& values) override;
  std::optional<Output> await_output() override;

 private:
  Fault fault_;
  std::string availability_ = "AV";
  bool enabled_ = true;
  std::int64_t lane_ = 1;
  Decimal section_lo_, section_hi_;
  std::deque<Output> pending_;
};

}  // namespace pickles

// Recursive-descent parser for specification suites and test cases.
#pragma once

#include <string>

#include "pickles/ast.hpp"

namespace pickles {

// Parses a full specification suite ("Variable Settings" + scenarios).
SpecSuiteAst parse_spec(const std::string& source);

// Parses a concrete test case (initialized-values Given + steps).
TestCaseAst parse_testcase(const std::string& source);

// Parses a single step fragment without its When/Then keyword, e.g.
// 'the user interface displays "availability" equal to AV'.
StepAst parse_step_text(const std::string& text, StepDir dir);

}  // namespace pickles

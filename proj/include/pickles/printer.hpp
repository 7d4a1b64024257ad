// Canonical text rendering of suite and test-case syntax trees.
// parse(pretty_print(ast)) reproduces the tree; pretty_print(parse(text))
// yields the canonical spelling of text.
#pragma once

#include <string>

#include "pickles/ast.hpp"

namespace pickles {

std::string pretty_print(const SpecSuiteAst& suite);
std::string pretty_print(const TestCaseAst& testcase);

// Renders one step without its When/Then/And keyword.
std::string print_step_body(const StepAst& step);

}  // namespace pickles

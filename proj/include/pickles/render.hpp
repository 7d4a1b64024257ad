// Back-translation of formal test cases into test-case syntax trees and
// canonical text.
#pragma once

#include <string>

#include "pickles/ast.hpp"
#include "pickles/sts.hpp"
#include "pickles/testgen.hpp"

namespace pickles {

// Canonical syntax for a concrete value; decimals keep their exact text.
ValueAst value_to_ast(const Value& v);

// The test-case tree for `tc`: an initialization block with every declared
// variable, input steps carrying their solved values, and output steps
// restored from the switch's recorded source text (their guard included).
TestCaseAst build_testcase_ast(const FormalTestCase& tc, const Sts& s);

std::string render_test(const FormalTestCase& tc, const Sts& s);

// Structural equality that ignores the order of value-definition lists,
// both in the initialization block and within a step's values.
bool testcases_equivalent(const TestCaseAst& a, const TestCaseAst& b);

}  // namespace pickles

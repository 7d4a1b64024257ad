// JSON interchange: systems and test suites round-trip losslessly, and the
// exported bytes are canonical (fixed key order, two-space indentation), so
// equal inputs serialize byte-identically.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pickles/prune.hpp"
#include "pickles/sts.hpp"
#include "pickles/testgen.hpp"

namespace pickles {

std::string export_sts(const Sts& s);
Sts import_sts(const std::string& bytes);

std::string export_tests(const std::vector<FormalTestCase>& tests, const Sts& s);
// Validates every test against `s`: switch ids, value arities, and domain
// membership. Violations raise SchemaError with the document path.
std::vector<FormalTestCase> import_tests(const std::string& bytes, const Sts& s);

// Samples file: one object mapping variable paths to lists of decimal
// strings, e.g. {"faulty detectors/length position": ["1.001", "2.999"]}.
SamplingPlan parse_samples(const std::string& bytes);

// Fixed-value file: one object mapping variable ids to values, decoded
// against each variable's declared domain (decimals as strings).
std::map<std::string, Value> parse_fixed_values(const std::string& bytes, const Sts& s);

std::string prune_report_json(const PruneReport& report);

}  // namespace pickles

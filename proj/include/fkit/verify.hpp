#pragma once

// Named verification suites: randomized and exhaustive checks of the algebraic
// identities behind each module, with a machine-readable report.

#include <cstdint>
#include <string>
#include <vector>

#include "fkit/io.hpp"

namespace fkit {

struct SuiteDescriptor {
  std::string name;
  std::uint64_t trials = 0;  // 0: the suite's default
  std::uint64_t seed = 0;
  std::vector<FieldDescriptor> fields;  // empty: the suite's default
  std::vector<AlgebraSpec> algebras;    // empty: the suite's default
  bool exhaustive = false;
  int workers = 1;
};

struct CheckResult {
  std::string check;      // suite-local name
  std::string statement;  // the identity being checked
  std::string field;      // field spec, empty if not applicable
  std::string algebra;    // algebra spec, empty if not applicable
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  json counterexample;    // first failure, null if none
  json details;           // suite-specific extras (kappa, counts, ...)
  double seconds = 0;
  bool ok() const { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

/// Every suite name, "all" last.
const std::vector<std::string>& suite_names();

/// Throws ParseError for an unknown suite or trials-free misuse.
SuiteReport run_suite(const SuiteDescriptor& suite);

json suite_report_to_json(const SuiteReport& r);

}  // namespace fkit

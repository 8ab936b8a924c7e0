#pragma once

#include <string>
#include <vector>

namespace regretlab {

// One release criterion: a named battery of runs with a one-line outcome.
struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suite names in execution order; each groups the criteria that share a
// runtime budget so ctest can time them independently.
std::vector<std::string> acceptance_suites();

// Runs every criterion in the named suite ("all" runs the full battery);
// throws ConfigError for unknown names. Criteria never throw on a failed
// check: they come back with pass = false and the failing margin in detail.
std::vector<CriterionResult> run_acceptance_suite(const std::string& suite);

}  // namespace regretlab

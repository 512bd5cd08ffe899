#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lgsim/circuit.h"

namespace lgsim {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

/// Hooks for checking that the suite itself detects faults.
struct AcceptanceHarness {
    /// Replaces the system rotation inside every simulated circuit.
    RotationFn rotation = nullptr;
};

/// Runs the ten end-to-end criteria. Never throws: an exception inside a
/// criterion is reported as a failure of that criterion.
std::vector<CriterionResult> run_acceptance_suite(const AcceptanceHarness &harness = {});

/// One "PASS|FAIL  [id] name : detail" line per criterion plus a summary.
void print_acceptance_report(std::ostream &out, const std::vector<CriterionResult> &results);

bool all_passed(const std::vector<CriterionResult> &results);

}  // namespace lgsim

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace deckrecon {

enum class VerifyLevel { fast, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    std::int64_t millis = 0;
    std::int64_t budget_ms = 0;
};

/// Runs the oracle / invariant criteria, printing one pass/fail line per
/// criterion to `out`. `fast` runs reduced-scale versions of the heavy
/// criteria (marked "reduced" in the output); `full` runs everything at the
/// stated scale and is the release gate.
std::vector<CriterionResult> run_verify_suite(VerifyLevel level, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace deckrecon

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "l2man/json_io.hpp"

namespace l2man {

/// One measured quantity compared against its pinned threshold.
/// `comparator` is "<=" or ">=" and `pass` records the comparison outcome.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string comparator = "<=";
    bool pass = false;
};

CheckResult check_le(std::string name, double value, double threshold);
CheckResult check_ge(std::string name, double value, double threshold);

/// One acceptance criterion: a named group of checks that pass together.
struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    bool pass = false;
    double seconds = 0.0;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
};

/// The full acceptance battery. Deterministic for a fixed seed.
SuiteReport run_suite(std::uint64_t seed = 1);

Json to_json(const SuiteReport& report);

} // namespace l2man

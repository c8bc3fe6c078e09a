#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace levycramer {

// The closed-form validation suite: every acceptance check of this
// project, run at full scale or at reduced "smoke" scale (n divided by
// 10-100, fixed tolerances widened 5x).  Failures are rows, not
// exceptions.  The report contains no wall-clock values, so its
// serialization is byte-identical for a given (seed, smoke) pair;
// measured times are returned separately.
struct CheckRow {
    std::string name;
    double target = 0.0;
    double estimate = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ValidateReport {
    std::vector<CheckRow> rows;
    std::uint64_t seed = 0;
    bool smoke = false;

    bool all_pass() const;
};

struct ValidateTimings {
    double exponent_ms = 0.0;      // slowest of the three solves
    double bm_law_seconds = 0.0;   // perpetuity batch + KS
    double cpp_law_seconds = 0.0;  // event-driven batch + KS
    double total_seconds = 0.0;
};

ValidateReport validate_suite(std::uint64_t seed, bool smoke,
                              ValidateTimings* timings = nullptr);

// Deterministic serializations of the report.
std::string report_json(const ValidateReport& report);
std::string report_table(const ValidateReport& report);

}  // namespace levycramer

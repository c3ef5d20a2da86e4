#pragma once

#include "crlab/exec.hpp"
#include "crlab/json_io.hpp"

#include <optional>
#include <string>

namespace crlab {

inline constexpr const char* kToolVersion = "crlab 0.1.0";

struct RunOptions {
    ExecPolicy policy;
    bool include_timing = true;
    bool trace = false;
    std::optional<std::uint64_t> seed;    // generate-corpus only
    std::optional<std::uint64_t> budget;  // overrides the scenario's enumeration budget
};

struct RunResult {
    int exit_code = 0;  // 0 positive, 1 negative but well-formed, 2 error
    Json report;
};

// Executes one scenario object and assembles the full report envelope
// (tool version, canonical scenario echo, fingerprint, budgets, outcome).
// When expected_task is nonempty it must equal the scenario's "task".
// Domain errors become machine-readable error reports with exit code 2;
// reports are byte-stable for a fixed scenario apart from the optional
// timing block.
RunResult run_scenario(const Json& scenario, const std::string& expected_task,
                       const RunOptions& opts);

// Tabular view of a report for the tasks that have one (certify-r,
// verify-ip-star, empirical-l).  Throws UnsupportedTask otherwise.
std::string emit_csv(const Json& report);

} // namespace crlab

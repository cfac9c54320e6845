#pragma once

#include <string>
#include <vector>

#include "minisol/report.hpp"

namespace minisol {

struct RunConfig {
    std::vector<std::string> inputs; // .sol files or directories (recursive)
    std::string format = "text";     // "text" | "json"
    DetectorConfig detectors;
    int widen_delay = 3;
    bool dump_cfg = false;
    bool dump_states = false;
    Severity fail_on = Severity::Warning;
    bool color = false;
};

struct RunResult {
    Report report;
    std::string output; // rendered report in the requested format
    std::string dumps;  // --dump-cfg / --dump-states text, if requested
    std::vector<std::string> errors; // frontend/IO failures, one per message
    int exit_code = 0;  // 0 clean, 1 findings at/above fail-on, 2 bad input
};

// Full pipeline: expand inputs, analyze every file, run detectors, render.
RunResult run(const RunConfig& config);

} // namespace minisol

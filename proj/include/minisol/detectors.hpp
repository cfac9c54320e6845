#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minisol/engine.hpp"

namespace minisol {

enum class Severity { Error, Warning, Info };

const char* severity_name(Severity s);

struct Diagnostic {
    std::string detector;
    Severity severity = Severity::Warning;
    Span span;
    std::string message;
    // ordered key -> rendered interval pairs, copied from events
    std::vector<std::pair<std::string, std::string>> evidence;
};

// Stable detector ids, also used by --detectors and the JSON output.
const std::vector<std::string>& all_detector_ids();

// Accepts a full id or its "dN" shorthand; nullopt for unknown ids.
std::optional<std::string> normalize_detector_id(const std::string& id);

struct DetectorConfig {
    std::set<std::string> enabled; // full ids; empty set means all
    bool is_enabled(const std::string& id) const {
        return enabled.empty() || enabled.count(id) > 0;
    }
};

// Runs every enabled detector over the analyzed contracts of one file.
// Pure: output depends only on the inputs; diagnostics are unsorted here.
std::vector<Diagnostic> run_detectors(const std::vector<ContractAnalysis>& analyses,
                                      const DetectorConfig& config);

} // namespace minisol

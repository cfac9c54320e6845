#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minisol/detectors.hpp"
#include "minisol/source.hpp"

namespace minisol {

inline constexpr const char* kToolVersion = "0.1.0";

struct FileReport {
    std::string path;
    std::shared_ptr<SourceFile> source;
    std::vector<Diagnostic> diagnostics; // sorted by (span begin, detector id)
};

struct Report {
    std::string version = kToolVersion;
    std::vector<FileReport> files; // sorted by path
    int errors = 0, warnings = 0, infos = 0;

    void recount();
    int count_at_or_above(Severity threshold) const;
};

// `path:line:col: severity[detector-id]: message (evidence)`, one per line.
std::string render_text(const Report& report, bool color);

// Fixed-key-order JSON document; byte-identical across runs on equal input.
std::string render_json(const Report& report);

} // namespace minisol

#include "minisol/report.hpp"

#include <sstream>

#include "json.hpp"

namespace minisol {

namespace {

int severity_rank(Severity s) {
    switch (s) {
    case Severity::Error: return 3;
    case Severity::Warning: return 2;
    case Severity::Info: return 1;
    }
    return 0;
}

const char* severity_color(Severity s) {
    switch (s) {
    case Severity::Error: return "\x1b[31m";   // red
    case Severity::Warning: return "\x1b[33m"; // yellow
    case Severity::Info: return "\x1b[36m";    // cyan
    }
    return "";
}

} // namespace

void Report::recount() {
    errors = warnings = infos = 0;
    for (const auto& f : files) {
        for (const auto& d : f.diagnostics) {
            switch (d.severity) {
            case Severity::Error: errors++; break;
            case Severity::Warning: warnings++; break;
            case Severity::Info: infos++; break;
            }
        }
    }
}

int Report::count_at_or_above(Severity threshold) const {
    int n = 0;
    for (const auto& f : files)
        for (const auto& d : f.diagnostics)
            if (severity_rank(d.severity) >= severity_rank(threshold))
                n++;
    return n;
}

std::string render_text(const Report& report, bool color) {
    std::ostringstream out;
    for (const auto& f : report.files) {
        for (const auto& d : f.diagnostics) {
            LineCol lc = f.source ? f.source->line_col(d.span.begin) : LineCol{};
            out << f.path << ":" << lc.line << ":" << lc.column << ": ";
            if (color)
                out << severity_color(d.severity) << severity_name(d.severity)
                    << "\x1b[0m";
            else
                out << severity_name(d.severity);
            out << "[" << d.detector << "]: " << d.message;
            if (!d.evidence.empty()) {
                out << " (";
                for (size_t i = 0; i < d.evidence.size(); i++) {
                    if (i)
                        out << ", ";
                    out << d.evidence[i].first << "=" << d.evidence[i].second;
                }
                out << ")";
            }
            out << "\n";
        }
    }
    out << report.errors << " error(s), " << report.warnings << " warning(s), "
        << report.infos << " info(s)\n";
    return out.str();
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["version"] = report.version;
    doc["files"] = nlohmann::ordered_json::array();
    for (const auto& f : report.files) {
        nlohmann::ordered_json file;
        file["path"] = f.path;
        file["diagnostics"] = nlohmann::ordered_json::array();
        for (const auto& d : f.diagnostics) {
            LineCol begin = f.source ? f.source->line_col(d.span.begin) : LineCol{};
            LineCol end = f.source ? f.source->line_col(d.span.end) : LineCol{};
            nlohmann::ordered_json diag;
            diag["detector"] = d.detector;
            diag["severity"] = severity_name(d.severity);
            diag["line"] = begin.line;
            diag["column"] = begin.column;
            diag["endLine"] = end.line;
            diag["endColumn"] = end.column;
            diag["message"] = d.message;
            nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
            for (const auto& [key, value] : d.evidence)
                evidence[key] = value;
            diag["evidence"] = evidence;
            file["diagnostics"].push_back(std::move(diag));
        }
        doc["files"].push_back(std::move(file));
    }
    doc["summary"] = {{"error", report.errors},
                      {"warning", report.warnings},
                      {"info", report.infos}};
    return doc.dump(2) + "\n";
}

} // namespace minisol

#include "minisol/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minisol/engine.hpp"
#include "minisol/error.hpp"
#include "minisol/parser.hpp"
#include "minisol/token.hpp"

namespace minisol {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       std::vector<std::string>& errors) {
    std::vector<std::string> paths;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            for (const auto& entry : fs::recursive_directory_iterator(input, ec))
                if (entry.is_regular_file() && entry.path().extension() == ".sol")
                    paths.push_back(entry.path().string());
        } else if (fs::is_regular_file(input, ec)) {
            paths.push_back(input);
        } else {
            errors.push_back("cannot read input: " + input);
        }
    }
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    return paths;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.begin != b.span.begin)
            return a.span.begin < b.span.begin;
        if (a.detector != b.detector)
            return a.detector < b.detector;
        return a.span.end < b.span.end;
    });
}

} // namespace

RunResult run(const RunConfig& config) {
    RunResult result;
    EngineConfig engine_config;
    engine_config.widen_delay = config.widen_delay;

    std::vector<std::string> paths = expand_inputs(config.inputs, result.errors);
    if (paths.empty() && result.errors.empty())
        result.errors.push_back("no .sol inputs found");

    for (const auto& path : paths) {
        FileReport file_report;
        file_report.path = path;
        try {
            auto source = std::make_shared<SourceFile>(path, read_file(path));
            file_report.source = source;
            std::vector<Token> tokens = tokenize(source->text());
            SourceUnit unit = parse(tokens);
            ResolveResult resolved = resolve(unit);

            std::vector<ContractAnalysis> analyses;
            for (const auto& contract : unit.contracts)
                analyses.push_back(analyze_contract(*contract,
                                                    resolved.tables.at(contract.get()),
                                                    *source, engine_config));

            if (config.dump_cfg || config.dump_states) {
                std::ostringstream dumps;
                for (const auto& ca : analyses) {
                    for (const auto& [func, cfg] : ca.cfgs) {
                        if (config.dump_cfg) {
                            dumps << "== cfg " << ca.contract->name << "."
                                  << (func->is_constructor ? "constructor" : func->name)
                                  << " ==\n"
                                  << dump_cfg(cfg) << "\n";
                        }
                        if (config.dump_states) {
                            dumps << "== states " << ca.contract->name << "."
                                  << (func->is_constructor ? "constructor" : func->name)
                                  << " ==\n"
                                  << dump_states(cfg, ca.results.at(func), *ca.symbols)
                                  << "\n";
                        }
                    }
                }
                result.dumps += dumps.str();
            }

            file_report.diagnostics = run_detectors(analyses, config.detectors);
            sort_diagnostics(file_report.diagnostics);
        } catch (const FrontendError& e) {
            LineCol lc = file_report.source
                             ? file_report.source->line_col(e.span().begin)
                             : LineCol{};
            result.errors.push_back(path + ":" + std::to_string(lc.line) + ":" +
                                    std::to_string(lc.column) + ": " +
                                    FrontendError::stage_name(e.stage()) + ": " +
                                    e.what());
            continue; // file is excluded from the report
        } catch (const std::exception& e) {
            result.errors.push_back(path + ": " + e.what());
            continue;
        }
        result.report.files.push_back(std::move(file_report));
    }

    result.report.recount();
    result.output = config.format == "json" ? render_json(result.report)
                                            : render_text(result.report, config.color);
    if (!result.errors.empty())
        result.exit_code = 2;
    else if (result.report.count_at_or_above(config.fail_on) > 0)
        result.exit_code = 1;
    else
        result.exit_code = 0;
    return result;
}

} // namespace minisol

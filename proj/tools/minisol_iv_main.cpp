#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define MINISOL_ISATTY _isatty
#define MINISOL_FILENO _fileno
#else
#include <unistd.h>
#define MINISOL_ISATTY isatty
#define MINISOL_FILENO fileno
#endif

#include "CLI11.hpp"

#include "minisol/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"minisol-iv: interval-analysis vulnerability scanner for the "
                 "MiniSol Solidity subset"};

    minisol::RunConfig config;
    std::string format = "text";
    std::string fail_on = "warning";
    std::vector<std::string> detector_ids;

    app.add_option("inputs", config.inputs, ".sol files or directories (recursive)")
        ->required();
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--detectors", detector_ids,
                   "Comma-separated detector ids (d1..d6 or full ids); default all")
        ->delimiter(',');
    app.add_option("--widen-delay", config.widen_delay,
                   "Loop-header visits before widening kicks in")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    app.add_flag("--dump-cfg", config.dump_cfg, "Print each function's CFG");
    app.add_flag("--dump-states", config.dump_states,
                 "Print per-instruction interval states");
    app.add_option("--fail-on", fail_on, "Lowest severity that fails the run")
        ->check(CLI::IsMember({"error", "warning", "info"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a configuration error
    }

    config.format = format;
    config.fail_on = fail_on == "error"     ? minisol::Severity::Error
                     : fail_on == "info"    ? minisol::Severity::Info
                                            : minisol::Severity::Warning;
    for (const auto& id : detector_ids) {
        auto full = minisol::normalize_detector_id(id);
        if (!full) {
            std::cerr << "unknown detector id: " << id << "\n";
            return 2;
        }
        config.detectors.enabled.insert(*full);
    }
    config.color = format == "text" && MINISOL_ISATTY(MINISOL_FILENO(stdout)) &&
                   std::getenv("MINISOL_IV_NO_COLOR") == nullptr;

    minisol::RunResult result = minisol::run(config);
    if (!result.dumps.empty())
        std::cout << result.dumps;
    std::cout << result.output;
    for (const auto& err : result.errors)
        std::cerr << err << "\n";
    return result.exit_code;
}

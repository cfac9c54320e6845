#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minisol/driver.hpp"
#include "minisol/engine.hpp"
#include "minisol/lower.hpp"
#include "minisol/parser.hpp"
#include "minisol/resolver.hpp"
#include "minisol/token.hpp"

namespace minisol::testing {

inline std::string fixture(const std::string& rel) {
    return std::string(FIXTURES_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// One fully analyzed source file; owns everything the analyses point into.
struct Analyzed {
    SourceFile file;
    SourceUnit unit;
    ResolveResult resolved;
    std::vector<ContractAnalysis> analyses;

    explicit Analyzed(SourceFile f) : file(std::move(f)) {}

    const ContractAnalysis& contract(const std::string& name) const {
        for (const auto& a : analyses)
            if (a.contract->name == name)
                return a;
        throw std::runtime_error("no contract " + name);
    }

    struct FunctionView {
        const FunctionDecl* decl = nullptr;
        const Cfg* cfg = nullptr;
        const AnalysisResult* result = nullptr;
        const SymbolTable* symbols = nullptr;
    };

    FunctionView function(const std::string& func_name) const {
        for (const auto& a : analyses)
            for (const auto& [decl, cfg] : a.cfgs)
                if (decl->name == func_name)
                    return {decl, &cfg, &a.results.at(decl), a.symbols};
        throw std::runtime_error("no function " + func_name);
    }
};

inline std::unique_ptr<Analyzed> analyze_source(const std::string& path, std::string text,
                                                EngineConfig config = {}) {
    auto out = std::make_unique<Analyzed>(SourceFile(path, std::move(text)));
    out->unit = parse(tokenize(out->file.text()));
    out->resolved = resolve(out->unit);
    for (const auto& contract : out->unit.contracts)
        out->analyses.push_back(analyze_contract(*contract, out->resolved.tables.at(contract.get()),
                                                 out->file, config));
    return out;
}

inline std::unique_ptr<Analyzed> analyze_fixture(const std::string& rel, EngineConfig config = {}) {
    std::string path = fixture(rel);
    return analyze_source(path, read_file(path), config);
}

// Finds a variable id by display name in a symbol table.
inline int var_id_of(const SymbolTable& symbols, const std::string& name) {
    for (const auto& [id, n] : symbols.names)
        if (n == name)
            return id;
    throw std::runtime_error("no variable named " + name);
}

// Every .sol fixture under tests/fixtures, sorted for determinism.
inline std::vector<std::string> all_fixture_files() {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(FIXTURES_DIR))
        if (entry.is_regular_file() && entry.path().extension() == ".sol")
            out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout only
};

// Runs a shell command, capturing stdout; stderr passes through.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed: " + cmd);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace minisol::testing

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <tuple>

#include "minisol/detectors.hpp"
#include "minisol/driver.hpp"
#include "support/concrete_interp.hpp"
#include "support/helpers.hpp"
#include "support/interval_oracle.hpp"

using namespace minisol;
using namespace minisol::testing;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& title, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << criterion << " — " << title;
    if (!ok && !detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok)
        g_failures++;
}

std::string basename_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- criterion 1: detection matrix ----------------------------------------

void criterion_detection_matrix() {
    auto start = Clock::now();
    RunConfig config;
    config.inputs = {fixture("vulnerable")};
    RunResult run_result = run(config);
    double elapsed = seconds_since(start);

    using Row = std::tuple<std::string, std::string, std::string, int>;
    std::set<Row> expected = {
        {"tautology.sol", "D1-tautology-contradiction", "error", 6},
        {"tautology.sol", "D1-tautology-contradiction", "warning", 12},
        {"division_by_zero.sol", "D2-div-by-zero", "warning", 7},
        {"division_remainder.sol", "D3-division-remainder", "info", 11},
        {"uninitialised_variable.sol", "D4-uninitialized-variable", "error", 4},
        {"input_validation.sol", "D5-unvalidated-input", "warning", 8},
        {"unmatched_type.sol", "D6-unmatched-type", "warning", 8},
    };
    std::set<Row> actual;
    for (const auto& f : run_result.report.files)
        for (const auto& d : f.diagnostics)
            actual.insert({basename_of(f.path), d.detector, severity_name(d.severity),
                           f.source->line_col(d.span.begin).line});

    std::string detail;
    bool ok = run_result.errors.empty() && run_result.exit_code == 1;
    if (actual != expected) {
        ok = false;
        for (const auto& [file, det, sev, line] : actual)
            detail += file + " " + det + " " + sev + " L" + std::to_string(line) + "; ";
    }
    if (elapsed >= 1.0) {
        ok = false;
        detail += "runtime " + std::to_string(elapsed) + "s";
    }
    report(1, "corpus detection matrix, exactly the six-class findings, < 1 s", ok, detail);
}

// ---- criterion 2: reference trace rows ------------------------------------

void criterion_trace_rows() {
    std::string detail;
    bool ok = true;
    try {
        auto analyzed = analyze_fixture("vulnerable/unmatched_type.sol");
        auto fv = analyzed->function("vote");
        std::string dump = dump_states(*fv.cfg, *fv.result, *fv.symbols);
        // Statement 2 of the reference trace (the counting increment) starts
        // at B0#2; the End section must show the same exact rows.
        const std::string option_row = "\n  option ∈ [0, max]";
        const std::string votes_row = "\n  _votes[msg.sender] ∈ [0, 2]";
        size_t stmt2 = dump.find("B0#2");
        size_t end = dump.find("\nEnd\n");
        ok = stmt2 != std::string::npos && end != std::string::npos &&
             dump.find(option_row, stmt2) != std::string::npos &&
             dump.find(votes_row, stmt2) != std::string::npos &&
             dump.find(option_row, end) != std::string::npos &&
             dump.find(votes_row, end) != std::string::npos;
        if (!ok)
            detail = "missing expected rows at statement 2 or End";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(2, "state dump reproduces the reference interval rows exactly", ok, detail);
}

// ---- criterion 3: exhaustive interval oracle ------------------------------

void criterion_interval_oracle() {
    auto start = Clock::now();
    OracleStats stats = exhaustive_interval_check(20, TypeDomain{0, 255});
    double elapsed = seconds_since(start);
    bool ok = stats.mismatches == 0 && elapsed < 60.0 && stats.cases > 0;
    std::string detail = stats.mismatches
                             ? std::to_string(stats.mismatches) + " mismatches, first: " +
                                   stats.first_mismatch
                             : "runtime " + std::to_string(elapsed) + "s";
    report(3, "interval arithmetic matches brute force on all bounds in 0..20", ok,
           ok ? "" : detail);
}

// ---- criterion 4: lattice laws --------------------------------------------

void criterion_lattice_laws() {
    std::mt19937_64 rng(424242);
    const TypeDomain dom{0, pow2(256) - 1};
    auto rand_bound = [&]() -> BigInt {
        switch (rng() % 3) {
        case 0: return BigInt(rng() % 64);
        case 1: return pow2(static_cast<unsigned>(rng() % 256));
        default: return dom.max - BigInt(rng() % 64);
        }
    };
    auto rand_interval = [&]() -> Interval {
        if (rng() % 10 == 0)
            return Interval::bottom();
        BigInt a = rand_bound(), b = rand_bound();
        return a <= b ? Interval(a, b) : Interval(b, a);
    };

    long violations = 0;
    const int kCases = 1200;
    for (int i = 0; i < kCases; i++) {
        Interval a = rand_interval(), b = rand_interval(), c = rand_interval();
        if (!(join(a, b) == join(b, a)))
            violations++;
        if (!(join(a, join(b, c)) == join(join(a, b), c)))
            violations++;
        if (!(join(a, a) == a))
            violations++;
        if (!(meet(a, b) == meet(b, a)))
            violations++;
        if (!(meet(a, a) == a))
            violations++;
        if (!leq(a, a))
            violations++;
        if (leq(a, b) && leq(b, a) && !(a == b))
            violations++;
        if (leq(a, b) && leq(b, c) && !leq(a, c))
            violations++;
        if (!leq(a, join(a, b)) || !leq(meet(a, b), a))
            violations++;
        std::vector<BigInt> thresholds = {rand_bound()};
        Interval w = widen(a, join(a, b), thresholds, dom);
        if (!leq(a, w) || !leq(b, w))
            violations++;
    }
    report(4, "lattice laws hold on 1200 randomized cases per law", violations == 0,
           std::to_string(violations) + " violations");
}

// ---- criterion 5: concrete soundness --------------------------------------

void criterion_concrete_soundness() {
    bool ok = true;
    std::string detail;
    for (const auto& path : all_fixture_files()) {
        auto analyzed = analyze_source(path, read_file(path));
        for (const auto& analysis : analyzed->analyses) {
            for (const auto& [decl, cfg] : analysis.cfgs) {
                const AnalysisResult& result = analysis.results.at(decl);
                const AbstractState& initial = result.block_in.at(cfg.entry);
                std::mt19937_64 rng(99 + cfg.blocks.size());
                for (int i = 0; i < 110 && ok; i++) {
                    ConcreteState concrete;
                    for (const auto& [id, av] : initial.vars)
                        concrete.vars[id] = sample_within(av, rng);
                    ConcreteRun r = run_concrete(cfg, std::move(concrete), rng, 3000);
                    std::string violation = check_trace(r, result);
                    if (!violation.empty()) {
                        ok = false;
                        detail = basename_of(path) + " " + decl->name + ": " + violation;
                    }
                }
            }
        }
    }
    report(5, "110 concrete runs per corpus function stay inside the intervals", ok, detail);
}

// ---- criterion 6: termination and convergence -----------------------------

void criterion_termination() {
    bool ok = true;
    std::string detail;
    try {
        auto counting = analyze_fixture("loops/count_to_ten.sol");
        auto count_fn = counting->function("count");
        int i_var = var_id_of(*count_fn.symbols, "i");
        if (!(count_fn.result->block_in.at(1).vars.at(i_var).itv == Interval(0, 10))) {
            ok = false;
            detail += "header not [0,10]; ";
        }
        if (!(count_fn.result->block_in.at(4).vars.at(i_var).itv == Interval(10, 10))) {
            ok = false;
            detail += "exit not [10,10]; ";
        }

        auto stress = analyze_fixture("loops/unbounded_increment.sol");
        auto pump = stress->function("pump");
        int x_var = var_id_of(*pump.symbols, "x");
        if (pump.result->end_state.vars.at(x_var).itv.hi() != pow2(256) - 1) {
            ok = false;
            detail += "stress loop hi != Tmax; ";
        }
        for (const auto& [block, visits] : pump.result->visit_counts)
            if (visits > 10) {
                ok = false;
                detail += "B" + std::to_string(block) + " visited " +
                          std::to_string(visits) + " times; ";
            }

        // The whole corpus analyzes without hitting the iteration limit.
        for (const auto& path : all_fixture_files())
            analyze_source(path, read_file(path));
    } catch (const std::exception& e) {
        ok = false;
        detail += e.what();
    }
    report(6, "loops converge with bounded widening and no iteration-limit failure", ok,
           detail);
}

// ---- criterion 7: guard suppression ---------------------------------------

void criterion_guard_suppression() {
    bool ok = true;
    std::string detail;
    const std::pair<const char*, const char*> pairs[] = {
        {"patched/division_by_zero.sol", "D2-div-by-zero"},
        {"patched/input_validation.sol", "D5-unvalidated-input"},
        {"patched/unmatched_type.sol", "D6-unmatched-type"},
    };
    for (const auto& [rel, detector] : pairs) {
        auto analyzed = analyze_fixture(rel);
        for (const auto& d : run_detectors(analyzed->analyses, {}))
            if (d.detector == detector) {
                ok = false;
                detail += std::string(rel) + " still reports " + detector + "; ";
            }
    }
    report(7, "the suggested require guards silence D2/D5/D6", ok, detail);
}

// ---- criterion 8: byte determinism ----------------------------------------

void criterion_determinism() {
    RunConfig config;
    config.inputs = {std::string(FIXTURES_DIR)};
    config.format = "json";
    RunResult a = run(config);
    RunResult b = run(config);
    bool ok = !a.output.empty() && a.output == b.output && a.exit_code == b.exit_code;
    report(8, "two full-corpus runs produce byte-identical JSON", ok);
}

} // namespace

int main() {
    criterion_detection_matrix();
    criterion_trace_rows();
    criterion_interval_oracle();
    criterion_lattice_laws();
    criterion_concrete_soundness();
    criterion_termination();
    criterion_guard_suppression();
    criterion_determinism();
    if (g_failures)
        std::cout << g_failures << " criterion(s) failed\n";
    return g_failures == 0 ? 0 : 1;
}

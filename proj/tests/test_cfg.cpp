#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "minisol/lower.hpp"
#include "minisol/parser.hpp"
#include "minisol/printer.hpp"
#include "minisol/resolver.hpp"
#include "minisol/token.hpp"
#include "minisol/walk.hpp"
#include "support/helpers.hpp"

using namespace minisol;
using namespace minisol::testing;

namespace {

struct Lowered {
    SourceFile file;
    SourceUnit unit;
    ResolveResult resolved;
    std::vector<std::pair<const FunctionDecl*, Cfg>> cfgs;

    explicit Lowered(SourceFile f) : file(std::move(f)) {}

    const Cfg& function(const std::string& name) const {
        for (const auto& [decl, cfg] : cfgs)
            if (decl->name == name)
                return cfg;
        throw std::runtime_error("no function " + name);
    }
};

std::unique_ptr<Lowered> lower_source(const std::string& path, std::string text) {
    auto out = std::make_unique<Lowered>(SourceFile(path, std::move(text)));
    out->unit = parse(tokenize(out->file.text()));
    out->resolved = resolve(out->unit);
    for (const auto& contract : out->unit.contracts) {
        const SymbolTable& table = out->resolved.tables.at(contract.get());
        for (const auto& func : contract->functions)
            if (func->body)
                out->cfgs.emplace_back(func.get(),
                                       lower_function(*func, table, out->file));
    }
    return out;
}

std::unique_ptr<Lowered> lower_fixture(const std::string& rel) {
    std::string path = fixture(rel);
    return lower_source(path, read_file(path));
}

int count_instrs(const Cfg& cfg, IrInstr::Kind kind) {
    int n = 0;
    for (const auto& b : cfg.blocks)
        for (const auto& i : b.instrs)
            if (i.kind == kind)
                n++;
    return n;
}

} // namespace

TEST_CASE("for-loop function lowers to the five-block shape") {
    auto lowered = lower_fixture("vulnerable/division_remainder.sol");
    const Cfg& cfg = lowered->function("split");
    REQUIRE(cfg.blocks.size() == 5);

    // Entry: both requires and the division, plus the loop-counter init.
    const BasicBlock& entry = cfg.blocks[cfg.entry];
    CHECK(count_instrs(cfg, IrInstr::Kind::Require) == 2);
    bool entry_has_div = false;
    for (const auto& i : entry.instrs)
        if (i.kind == IrInstr::Kind::BinOp && i.bin_op == BinaryOp::Div)
            entry_has_div = true;
    CHECK(entry_has_div);

    // Header branches; body holds the transfer; step re-enters the header.
    const int header = 1, body = 2, step = 3, exit = 4;
    REQUIRE(cfg.blocks[header].branch_cond.has_value());
    CHECK(cfg.edge_between(cfg.entry, header) != nullptr);
    REQUIRE(cfg.edge_between(header, body) != nullptr);
    CHECK(cfg.edge_between(header, body)->kind == EdgeKind::TrueBranch);
    REQUIRE(cfg.edge_between(header, exit) != nullptr);
    CHECK(cfg.edge_between(header, exit)->kind == EdgeKind::FalseBranch);
    CHECK(cfg.edge_between(body, step) != nullptr);
    CHECK(cfg.edge_between(step, header) != nullptr);
    bool body_has_transfer = false;
    for (const auto& i : cfg.blocks[body].instrs)
        if (i.kind == IrInstr::Kind::ExternalTransfer)
            body_has_transfer = true;
    CHECK(body_has_transfer);
}

TEST_CASE("straight-line function lowers to a single block") {
    auto lowered = lower_fixture("vulnerable/unmatched_type.sol");
    const Cfg& cfg = lowered->function("vote");
    CHECK(cfg.blocks.size() == 1);
    CHECK(count_instrs(cfg, IrInstr::Kind::EnumCast) == 2);
    // The ++ lowers to read, add-one, write: at least one Add BinOp.
    bool has_add = false;
    for (const auto& i : cfg.blocks[0].instrs)
        if (i.kind == IrInstr::Kind::BinOp && i.bin_op == BinaryOp::Add)
            has_add = true;
    CHECK(has_add);
}

TEST_CASE("empty body lowers to one empty entry block") {
    auto lowered = lower_source("<mem>", "contract C { function f() external { } }");
    const Cfg& cfg = lowered->function("f");
    REQUIRE(cfg.blocks.size() == 1);
    CHECK(cfg.blocks[cfg.entry].instrs.empty());
    CHECK(cfg.edges.empty());
}

TEST_CASE("reverse post-order of a linear graph is the block order") {
    auto lowered = lower_source("<mem>",
                                "contract C { function f(uint x) external pure returns "
                                "(uint) { if (x > 1) { x = 1; } else { x = 2; } return x; } }");
    const Cfg& cfg = lowered->function("f");
    auto rpo = reverse_post_order(cfg);
    REQUIRE(rpo.size() == cfg.blocks.size());
    CHECK(rpo.front() == cfg.entry);
    std::set<int> seen(rpo.begin(), rpo.end());
    CHECK(seen.size() == rpo.size());
}

TEST_CASE("reverse post-order puts the loop header before body and exit") {
    auto lowered = lower_fixture("vulnerable/division_remainder.sol");
    const Cfg& cfg = lowered->function("split");
    auto rpo = reverse_post_order(cfg);
    auto pos = [&](int b) {
        for (size_t i = 0; i < rpo.size(); i++)
            if (rpo[i] == b)
                return static_cast<int>(i);
        return -1;
    };
    CHECK(rpo.front() == cfg.entry);
    CHECK(pos(1) < pos(2)); // header before body
    CHECK(pos(1) < pos(4)); // header before exit
}

TEST_CASE("reverse post-order of a single node") {
    auto lowered = lower_source("<mem>", "contract C { function f() external { } }");
    auto rpo = reverse_post_order(lowered->function("f"));
    CHECK(rpo == std::vector<int>{0});
}

TEST_CASE("structural invariants hold across the whole corpus") {
    for (const auto& path : all_fixture_files()) {
        auto lowered = lower_source(path, read_file(path));
        for (const auto& [decl, cfg] : lowered->cfgs) {
            INFO(path << " " << decl->name);
            CHECK_NOTHROW(validate_cfg(cfg));
            CHECK(cfg.predecessors(cfg.entry).empty());
        }
    }
}

TEST_CASE("every statement contributes an instruction carrying its span") {
    for (const auto& path : all_fixture_files()) {
        auto lowered = lower_source(path, read_file(path));
        std::string src = read_file(path);
        for (const auto& [decl, cfg] : lowered->cfgs) {
            std::vector<Span> spans;
            for (const auto& b : cfg.blocks)
                for (const auto& i : b.instrs) {
                    CHECK(i.span.end <= src.size());
                    spans.push_back(i.span);
                }
            walk_statements(*decl->body, [&](const Stmt& s) {
                if (s.kind == Stmt::Kind::Block || s.kind == Stmt::Kind::If ||
                    s.kind == Stmt::Kind::While || s.kind == Stmt::Kind::For ||
                    s.kind == Stmt::Kind::Placeholder)
                    return;
                bool covered = false;
                for (const Span& sp : spans)
                    if (sp.begin >= s.span.begin && sp.end <= s.span.end)
                        covered = true;
                INFO(path << " " << decl->name << " statement at " << s.span.begin);
                CHECK(covered);
            });
        }
    }
}

TEST_CASE("lowering is deterministic") {
    for (const auto& path : all_fixture_files()) {
        auto once = lower_source(path, read_file(path));
        auto twice = lower_source(path, read_file(path));
        REQUIRE(once->cfgs.size() == twice->cfgs.size());
        for (size_t i = 0; i < once->cfgs.size(); i++) {
            INFO(path);
            CHECK(dump_cfg(once->cfgs[i].second) == dump_cfg(twice->cfgs[i].second));
        }
    }
}

TEST_CASE("temps are assigned exactly once") {
    auto lowered = lower_fixture("vulnerable/division_by_zero.sol");
    const Cfg& cfg = lowered->function("split");
    std::map<int, int> assigns;
    for (const auto& b : cfg.blocks)
        for (const auto& i : b.instrs)
            if (i.kind == IrInstr::Kind::Assign || i.kind == IrInstr::Kind::BinOp ||
                i.kind == IrInstr::Kind::UnOp || i.kind == IrInstr::Kind::EnumCast)
                if (cfg.temp_names.count(i.dest.root))
                    assigns[i.dest.root]++;
    for (const auto& [id, n] : assigns)
        CHECK(n == 1);
}

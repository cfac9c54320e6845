#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minisol/engine.hpp"
#include "minisol/resolver.hpp"
#include "support/helpers.hpp"

using namespace minisol;
using namespace minisol::testing;

namespace {

bool states_equal(const AbstractState& a, const AbstractState& b) {
    return state_leq(a, b) && state_leq(b, a);
}

const Interval& scalar_of(const AbstractState& s, int id) { return s.vars.at(id).itv; }

} // namespace

TEST_CASE("vote analysis reproduces the reference trace rows") {
    auto analyzed = analyze_fixture("vulnerable/unmatched_type.sol");
    auto fv = analyzed->function("vote");
    std::string dump = dump_states(*fv.cfg, *fv.result, *fv.symbols);
    CHECK(dump.find("option ∈ [0, max]") != std::string::npos);
    CHECK(dump.find("_votes[msg.sender] ∈ [0, 2]") != std::string::npos);

    // End state: the parameter stays top, the enum-typed slot is clipped.
    int option = var_id_of(*fv.symbols, "option");
    const AbstractState& end = fv.result->end_state;
    CHECK(render_interval(scalar_of(end, option)) == "[0, max]");
    int votes = var_id_of(*fv.symbols, "_votes");
    CHECK(render_interval(join(end.vars.at(votes).summary().itv, Interval(0, 0))) ==
          "[0, 2]");
}

TEST_CASE("straight-line constant propagation") {
    auto analyzed = analyze_source("<mem>",
                                   "contract C { function f() external pure returns (uint) "
                                   "{ uint x = 1; uint y = x + 2; return y; } }");
    auto fv = analyzed->function("f");
    int y = var_id_of(*fv.symbols, "y");
    CHECK(scalar_of(fv.result->end_state, y) == Interval(3, 3));
}

TEST_CASE("counting loop converges to exact bounds via threshold widening") {
    auto analyzed = analyze_fixture("loops/count_to_ten.sol");
    auto fv = analyzed->function("count");
    int i = var_id_of(*fv.symbols, "i");
    int last = var_id_of(*fv.symbols, "last");

    const int header = 1, exit = 4;
    CHECK(scalar_of(fv.result->block_in.at(header), i) == Interval(0, 10));
    CHECK(scalar_of(fv.result->block_in.at(exit), i) == Interval(10, 10));
    // `last` rides the widening to the harvested literal 10 and stays there;
    // there is no narrowing pass to pull it back to [0, 9].
    CHECK(scalar_of(fv.result->end_state, last) == Interval(0, 10));
    CHECK(fv.result->visit_counts.at(header) <= 10);
}

TEST_CASE("unbounded loop widens to the type maximum and terminates") {
    auto analyzed = analyze_fixture("loops/unbounded_increment.sol");
    auto fv = analyzed->function("pump");
    int x = var_id_of(*fv.symbols, "x");
    const Interval& at_end = scalar_of(fv.result->end_state, x);
    CHECK(at_end.hi() == pow2(256) - 1);
    for (const auto& [block, visits] : fv.result->visit_counts)
        CHECK(visits <= 10);
}

TEST_CASE("require refines an array length lower bound") {
    auto analyzed = analyze_fixture("vulnerable/division_remainder.sol");
    auto fv = analyzed->function("split");
    int recipients = var_id_of(*fv.symbols, "recipients");

    // Find the out-state of the length guard in the entry block.
    const BasicBlock& entry = fv.cfg->blocks[fv.cfg->entry];
    bool checked = false;
    for (size_t idx = 0; idx < entry.instrs.size(); idx++) {
        if (entry.instrs[idx].kind != IrInstr::Kind::Require)
            continue;
        const AbstractState& out = fv.result->instr_states.at({fv.cfg->entry, (int)idx}).second;
        CHECK(out.vars.at(recipients).length.lo() >= 1);
        checked = true;
        break;
    }
    CHECK(checked);
}

TEST_CASE("equality guard pins msg.sender to the unwritten owner") {
    auto analyzed = analyze_source(
        "<mem>",
        "contract C { address private owner;\n"
        "modifier onlyOwner() { require(msg.sender == owner, \"no\"); _; }\n"
        "function f() external view onlyOwner returns (bool) { return true; } }");
    auto fv = analyzed->function("f");

    // Unwritten state variable: stuck at the default, never assigned.
    int owner = var_id_of(*fv.symbols, "owner");
    const AbstractState& at_entry = fv.result->block_in.at(fv.cfg->entry);
    CHECK(scalar_of(at_entry, owner) == Interval(0, 0));
    CHECK_FALSE(at_entry.vars.at(owner).explicitly_assigned);

    // After the guard the only surviving sender is the zero address.
    CHECK(scalar_of(fv.result->end_state, kMsgSenderId) == Interval(0, 0));
}

TEST_CASE("constructor writes flow into every function's entry state") {
    auto analyzed = analyze_source(
        "<mem>",
        "contract C { address private owner;\n"
        "constructor() { owner = msg.sender; }\n"
        "function whoami() external view returns (address) { return owner; } }");
    auto fv = analyzed->function("whoami");
    int owner = var_id_of(*fv.symbols, "owner");
    const AbstractValue& v = fv.result->block_in.at(fv.cfg->entry).vars.at(owner);
    CHECK(v.itv == Interval(0, pow2(160) - 1));
    CHECK(v.explicitly_assigned);
}

TEST_CASE("array initializer gives exact length and element hull") {
    auto analyzed = analyze_fixture("vulnerable/input_validation.sol");
    auto fv = analyzed->function("getElement");
    int arr = var_id_of(*fv.symbols, "_array");
    const AbstractValue& v = fv.result->block_in.at(fv.cfg->entry).vars.at(arr);
    CHECK(v.length == Interval(5, 5));
    CHECK(v.element_summary().itv == Interval(10, 50));

    // The unchecked access bounds the index for the code after it.
    int index = var_id_of(*fv.symbols, "index");
    CHECK(scalar_of(fv.result->end_state, index) == Interval(0, 4));
}

TEST_CASE("msg.value is top only in payable functions") {
    auto payable_src = analyze_fixture("vulnerable/division_by_zero.sol");
    auto payable_fn = payable_src->function("split");
    CHECK(scalar_of(payable_fn.result->block_in.at(payable_fn.cfg->entry), kMsgValueId).hi() ==
          pow2(256) - 1);

    auto view_src = analyze_fixture("vulnerable/input_validation.sol");
    auto view_fn = view_src->function("getElement");
    CHECK(scalar_of(view_fn.result->block_in.at(view_fn.cfg->entry), kMsgValueId) ==
          Interval(0, 0));
}

TEST_CASE("contradictory guard yields an unreachable end state") {
    auto analyzed = analyze_fixture("vulnerable/tautology.sol");
    auto fv = analyzed->function("notGonnaExecute");
    CHECK(fv.result->end_state.is_bottom());

    // The verdict event still carries the pre-refinement certainty.
    bool found = false;
    for (const auto& ev : fv.result->events)
        if (ev.kind == AnalysisEvent::Kind::ConditionVerdict) {
            CHECK(ev.a == Interval(0, 0));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("fixpoint states are idempotent under the transfer function") {
    for (const char* rel :
         {"vulnerable/tautology.sol", "vulnerable/division_by_zero.sol",
          "vulnerable/division_remainder.sol", "vulnerable/input_validation.sol",
          "vulnerable/unmatched_type.sol", "loops/count_to_ten.sol",
          "loops/unbounded_increment.sol"}) {
        auto analyzed = analyze_fixture(rel);
        for (const auto& analysis : analyzed->analyses) {
            for (const auto& [decl, cfg] : analysis.cfgs) {
                Engine engine(cfg);
                const AnalysisResult& result = analysis.results.at(decl);
                for (const auto& [key, io] : result.instr_states) {
                    const IrInstr& instr = cfg.blocks[key.first].instrs[key.second];
                    AbstractState again = engine.transfer(instr, io.first, nullptr);
                    INFO(rel << " " << decl->name << " B" << key.first << "#" << key.second);
                    CHECK(states_equal(again, io.second));
                }
            }
        }
    }
}

TEST_CASE("analysis results are deterministic") {
    for (int round = 0; round < 2; round++) {
        auto a = analyze_fixture("vulnerable/division_by_zero.sol");
        auto b = analyze_fixture("vulnerable/division_by_zero.sol");
        auto fa = a->function("split"), fb = b->function("split");
        REQUIRE(fa.result->events.size() == fb.result->events.size());
        for (size_t i = 0; i < fa.result->events.size(); i++) {
            CHECK(fa.result->events[i].kind == fb.result->events[i].kind);
            CHECK(fa.result->events[i].span == fb.result->events[i].span);
            CHECK(fa.result->events[i].a == fb.result->events[i].a);
        }
        CHECK(dump_states(*fa.cfg, *fa.result, *fa.symbols) ==
              dump_states(*fb.cfg, *fb.result, *fb.symbols));
    }
}

TEST_CASE("worklist slots accept a custom flow function") {
    auto analyzed = analyze_fixture("loops/count_to_ten.sol");
    auto fv = analyzed->function("count");

    // Identity flow: every reachable in-state equals the out-state; the
    // iteration still terminates and visits every block.
    AbstractState initial = fv.result->block_in.at(fv.cfg->entry);
    FlowFn identity = [](const IrInstr&, const AbstractState& s,
                         std::vector<AnalysisEvent>*) { return s; };
    OrderFn order = state_leq;
    AnalysisResult generic = run_worklist(*fv.cfg, initial, identity, order);
    CHECK(generic.iterations >= 1);
    CHECK(generic.block_in.count(fv.cfg->entry) == 1);
    for (const auto& [block, in] : generic.block_in)
        if (generic.block_out.count(block))
            CHECK(states_equal(in, generic.block_out.at(block)));
}

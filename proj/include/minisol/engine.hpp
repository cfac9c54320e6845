#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minisol/ir.hpp"
#include "minisol/resolver.hpp"
#include "minisol/value.hpp"

namespace minisol {

// Facts observed while replaying the fixpoint states; the detectors' only
// view into the analysis. Events always carry pre-refinement intervals:
// post-states describe surviving executions only, so the interesting
// (reverting) part of the domain is visible here and nowhere else.
struct AnalysisEvent {
    enum class Kind {
        DivisorInterval,         // a = divisor interval at a div/mod site
        ConditionVerdict,        // a = bool verdict of a checked/branch condition
        EnumCastSource,          // a = source interval; enum_decl/enum_size set
        IndexAccess,             // a = index interval, b = length interval
        ValueTransferOfQuotient, // a = dividend, b = divisor (at the div site)
    };
    enum class Origin { Require, Assert, IfBranch, LoopHeader };

    Kind kind{};
    Span span;
    Interval a, b;
    std::string a_name, b_name; // rendered source operands for messages/evidence
    Origin origin = Origin::Require;   // ConditionVerdict
    const EnumDecl* enum_decl = nullptr;
    int enum_size = 0;                 // EnumCastSource
    bool validated = false;            // IndexAccess: proven in-bounds relationally
    bool remainder_handled = false;    // ValueTransferOfQuotient
};

struct EngineConfig {
    int widen_delay = 3;   // joins before widening kicks in at loop headers
    int max_visits = 1000; // per-node limit; exceeding it is an engine bug
};

struct AnalysisResult {
    const Cfg* cfg = nullptr;
    std::map<int, AbstractState> block_in, block_out;
    // (block id, instruction index) -> (in, out)
    std::map<std::pair<int, int>, std::pair<AbstractState, AbstractState>> instr_states;
    AbstractState end_state; // join of out-states of exit blocks
    std::vector<AnalysisEvent> events;
    std::map<int, int> visit_counts;
    int iterations = 0;
    int widenings = 0;
};

// Parameter slots of the generic worklist loop: the flow function maps an
// instruction and a pre-state to a post-state; the order function is the
// lattice comparison used to detect monotonic change.
using FlowFn = std::function<AbstractState(const IrInstr&, const AbstractState&,
                                           std::vector<AnalysisEvent>*)>;
using OrderFn = std::function<bool(const AbstractState&, const AbstractState&)>;

// Per-function forward interval analysis over one CFG.
class Engine {
public:
    explicit Engine(const Cfg& cfg, EngineConfig config = {});

    // Worklist fixpoint from the entry state, with the standard interval
    // transfer/order plugged into the slots.
    AnalysisResult run(const AbstractState& initial) const;
    AnalysisResult run(const AbstractState& initial, const FlowFn& flow,
                       const OrderFn& order) const;

    // One-instruction flow function. Bottom in -> Bottom out, no events.
    AbstractState transfer(const IrInstr& instr, const AbstractState& state,
                           std::vector<AnalysisEvent>* events) const;

    // Assumes a boolean operand true/false and narrows the state; comparison
    // atoms (reached through the temp definitions) refine their operands,
    // everything else is a sound no-op. Contradictions yield Bottom.
    AbstractState refine_condition(const AbstractState& state, const Operand& cond,
                                   bool assume) const;

    const std::vector<int>& rpo() const { return rpo_; }
    bool is_loop_header(int block) const;

private:
    const Cfg& cfg_;
    EngineConfig config_;
    std::vector<int> rpo_;
    std::map<int, int> rpo_pos_;
    std::set<int> loop_headers_;
    std::vector<BigInt> thresholds_;

    AbstractState edge_state(const AbstractState& pred_out, const BasicBlock& pred,
                             EdgeKind kind) const;
    void replay(AnalysisResult& result, const FlowFn& flow) const;

    AbstractValue eval_operand(AbstractState& state, const Operand& op,
                               std::vector<AnalysisEvent>* events, Span span) const;
    AbstractValue read_place(AbstractState& state, const Place& place,
                             std::vector<AnalysisEvent>* events, Span span) const;
    void write_place(AbstractState& state, const Place& place, AbstractValue value,
                     std::vector<AnalysisEvent>* events, Span span) const;
    void write_path(AbstractState& state, AbstractValue& cur, const Place& place,
                    size_t depth, const AbstractValue& value,
                    std::vector<AnalysisEvent>* events, Span span) const;
    AbstractValue array_literal_value(AbstractState& state, const IrInstr& instr,
                                      std::vector<AnalysisEvent>* events) const;
    Interval eval_scalar(const AbstractState& state, const Operand& op) const;
    Span operand_span(const Operand& op) const;

    AbstractState refine_compare(const AbstractState& state, BinaryOp op,
                                 const Operand& a, const Operand& b) const;
    bool store_refined(AbstractState& state, const Operand& op, const Interval& itv) const;
};

AnalysisResult run_worklist(const Cfg& cfg, const AbstractState& initial,
                            const FlowFn& flow, const OrderFn& order,
                            EngineConfig config = {});

// Whole-contract analysis: runs the constructor from declared defaults, then
// each function with state variables at (post-constructor join top) when the
// variable is written outside the constructor, post-constructor values
// otherwise. Parameters start at top; msg.value is [0,0] unless payable.
struct ContractAnalysis {
    const ContractDef* contract = nullptr;
    const SymbolTable* symbols = nullptr;
    std::vector<std::pair<const FunctionDecl*, Cfg>> cfgs; // declaration order
    std::map<const FunctionDecl*, AnalysisResult> results;
};

ContractAnalysis analyze_contract(const ContractDef& contract, const SymbolTable& symbols,
                                  const SourceFile& file, EngineConfig config = {});

// Per-instruction in-state listing (`name ∈ [lo, hi]` lines) for --dump-states.
std::string dump_states(const Cfg& cfg, const AnalysisResult& result,
                        const SymbolTable& symbols);

} // namespace minisol

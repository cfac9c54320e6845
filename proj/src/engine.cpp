#include "minisol/engine.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "minisol/error.hpp"
#include "minisol/lower.hpp"

namespace minisol {

namespace {

BinaryOp negate_cmp(BinaryOp op) {
    switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: return op;
    }
}

void kill_state(AbstractState& st) {
    st.reachable = false;
    st.vars.clear();
}

} // namespace

Engine::Engine(const Cfg& cfg, EngineConfig config) : cfg_(cfg), config_(config) {
    rpo_ = reverse_post_order(cfg);
    for (size_t i = 0; i < rpo_.size(); i++)
        rpo_pos_[rpo_[i]] = static_cast<int>(i);
    for (const auto& e : cfg.edges)
        if (rpo_pos_.at(e.from) >= rpo_pos_.at(e.to))
            loop_headers_.insert(e.to);
    thresholds_ = cfg.literals;
}

bool Engine::is_loop_header(int block) const { return loop_headers_.count(block) > 0; }

Span Engine::operand_span(const Operand& op) const {
    if (op.kind == Operand::Kind::PlaceRef) {
        auto it = cfg_.temp_defs.find(op.place->root);
        if (it != cfg_.temp_defs.end())
            return it->second.span;
    }
    return cfg_.function ? cfg_.function->span : Span{};
}

// ---- value access -------------------------------------------------------

Interval Engine::eval_scalar(const AbstractState& state, const Operand& op) const {
    AbstractState scratch = state;
    AbstractValue v = eval_operand(scratch, op, nullptr, Span{});
    return v.kind == AbstractValue::Kind::Scalar ? v.itv : Interval::bottom();
}

AbstractValue Engine::eval_operand(AbstractState& state, const Operand& op,
                                   std::vector<AnalysisEvent>* events, Span span) const {
    switch (op.kind) {
    case Operand::Kind::Literal:
        return AbstractValue::scalar(Interval::singleton(op.lit), op.type);
    case Operand::Kind::MsgSender: {
        auto it = state.vars.find(kMsgSenderId);
        if (it != state.vars.end())
            return it->second;
        return AbstractValue::top_of(MiniSolType::address());
    }
    case Operand::Kind::MsgValue: {
        auto it = state.vars.find(kMsgValueId);
        if (it != state.vars.end())
            return it->second;
        return AbstractValue::top_of(MiniSolType::uint_t(256));
    }
    case Operand::Kind::Havoc:
        return AbstractValue::top_of(op.type);
    case Operand::Kind::PlaceRef:
        return read_place(state, *op.place, events, span);
    }
    return AbstractValue::scalar(Interval::bottom(), op.type);
}

AbstractValue Engine::read_place(AbstractState& state, const Place& p,
                                 std::vector<AnalysisEvent>* events, Span span) const {
    auto it = state.vars.find(p.root);
    if (it == state.vars.end())
        return AbstractValue::scalar(Interval::bottom(), p.type);
    AbstractValue cur = it->second;
    for (const auto& elem : p.path) {
        switch (elem.kind) {
        case PathElem::Kind::Field:
            cur = cur.fields.at(elem.field);
            break;
        case PathElem::Kind::Length:
            return AbstractValue::scalar(cur.length, MiniSolType::uint_t(256));
        case PathElem::Kind::Index: {
            AbstractValue idx = eval_operand(state, elem.index, events, span);
            if (cur.kind == AbstractValue::Kind::Array) {
                bool crumb = idx.below_length_of.count(p.root) > 0;
                if (events) {
                    AnalysisEvent ev;
                    ev.kind = AnalysisEvent::Kind::IndexAccess;
                    ev.span = span;
                    ev.a = idx.itv;
                    ev.b = cur.length;
                    ev.a_name = render_operand(elem.index);
                    ev.b_name = p.root_name;
                    ev.validated = crumb;
                    events->push_back(ev);
                }
                // Surviving executions satisfy index < length.
                if (!idx.itv.is_bottom() && !cur.length.is_bottom()) {
                    Interval fit = meet(idx.itv,
                                        Interval(idx.itv.lo(), BigInt(cur.length.hi() - 1)));
                    if (fit.is_bottom()) {
                        kill_state(state);
                        return AbstractValue::scalar(Interval::bottom(), p.type);
                    }
                    if (elem.index.kind == Operand::Kind::PlaceRef &&
                        elem.index.place->path.empty()) {
                        auto vi = state.vars.find(elem.index.place->root);
                        if (vi != state.vars.end() &&
                            vi->second.kind == AbstractValue::Kind::Scalar)
                            vi->second.itv = fit;
                    }
                    idx.itv = fit;
                }
                if (cur.per_element && idx.itv.is_singleton() && idx.itv.lo() >= 0 &&
                    idx.itv.lo() < BigInt(cur.elems.size()))
                    cur = cur.elems[static_cast<size_t>(idx.itv.lo())];
                else
                    cur = cur.element_summary();
            } else if (cur.kind == AbstractValue::Kind::Mapping) {
                // An unwritten key holds the default value.
                cur = join_value(AbstractValue::default_of(cur.type->value),
                                 cur.elems[0]);
            } else {
                cur = AbstractValue::scalar(Interval::bottom(), p.type);
            }
            break;
        }
        }
    }
    return cur;
}

void Engine::write_place(AbstractState& state, const Place& p, AbstractValue value,
                         std::vector<AnalysisEvent>* events, Span span) const {
    value.explicitly_assigned = true;
    if (p.path.empty()) {
        state.vars.insert_or_assign(p.root, std::move(value));
        return;
    }
    auto it = state.vars.find(p.root);
    if (it == state.vars.end())
        return; // write through an undeclared root: dropped (engine bug guard)
    write_path(state, it->second, p, 0, value, events, span);
}

void Engine::write_path(AbstractState& state, AbstractValue& cur, const Place& p,
                        size_t depth, const AbstractValue& v,
                        std::vector<AnalysisEvent>* events, Span span) const {
    if (depth == p.path.size()) {
        TypePtr keep = cur.type;
        cur = v;
        if (cur.kind == AbstractValue::Kind::Scalar && keep && keep->is_scalar())
            cur.type = keep;
        cur.explicitly_assigned = true;
        return;
    }
    const PathElem& elem = p.path[depth];
    switch (elem.kind) {
    case PathElem::Kind::Field:
        write_path(state, cur.fields.at(elem.field), p, depth + 1, v, events, span);
        cur.explicitly_assigned = true;
        return;
    case PathElem::Kind::Length:
        cur.length = v.itv; // not expressible in MiniSol source
        return;
    case PathElem::Kind::Index: {
        if (cur.kind == AbstractValue::Kind::Mapping) {
            // weak update: any key may or may not be the one written
            eval_operand(state, elem.index, events, span);
            AbstractValue tmp = cur.elems[0];
            write_path(state, tmp, p, depth + 1, v, events, span);
            cur.elems[0] = join_value(cur.elems[0], tmp);
            cur.explicitly_assigned = true;
            return;
        }
        if (cur.kind != AbstractValue::Kind::Array)
            return;
        AbstractValue idxv = eval_operand(state, elem.index, events, span);
        Interval idx = idxv.itv;
        bool crumb = idxv.below_length_of.count(p.root) > 0;
        if (events) {
            AnalysisEvent ev;
            ev.kind = AnalysisEvent::Kind::IndexAccess;
            ev.span = span;
            ev.a = idx;
            ev.b = cur.length;
            ev.a_name = render_operand(elem.index);
            ev.b_name = p.root_name;
            ev.validated = crumb;
            events->push_back(ev);
        }
        // out-of-bounds writes revert: surviving executions have index < length
        if (!idx.is_bottom() && !cur.length.is_bottom()) {
            Interval fit = meet(idx, Interval(idx.lo(), BigInt(cur.length.hi() - 1)));
            if (fit.is_bottom()) {
                kill_state(state);
                return;
            }
            if (elem.index.kind == Operand::Kind::PlaceRef &&
                elem.index.place->path.empty()) {
                auto vi = state.vars.find(elem.index.place->root);
                if (vi != state.vars.end() &&
                    vi->second.kind == AbstractValue::Kind::Scalar)
                    vi->second.itv = fit;
            }
            idx = fit;
        }
        if (idx.is_bottom())
            return;
        if (cur.per_element) {
            BigInt n(cur.elems.size());
            if (idx.is_singleton() && idx.lo() >= 0 && idx.lo() < n) {
                write_path(state, cur.elems[static_cast<size_t>(idx.lo())], p,
                           depth + 1, v, events, span);
            } else {
                BigInt lo = std::max(idx.lo(), BigInt(0));
                BigInt hi = std::min(idx.hi(), BigInt(n - 1));
                for (BigInt k = lo; k <= hi; k++) {
                    AbstractValue tmp = cur.elems[static_cast<size_t>(k)];
                    write_path(state, tmp, p, depth + 1, v, events, span);
                    cur.elems[static_cast<size_t>(k)] =
                        join_value(cur.elems[static_cast<size_t>(k)], tmp);
                }
            }
        } else {
            AbstractValue tmp = cur.elems[0];
            write_path(state, tmp, p, depth + 1, v, events, span);
            cur.elems[0] = join_value(cur.elems[0], tmp);
        }
        cur.explicitly_assigned = true;
        return;
    }
    }
}

// ---- transfer -----------------------------------------------------------

AbstractState Engine::transfer(const IrInstr& instr, const AbstractState& state,
                               std::vector<AnalysisEvent>* events) const {
    if (state.is_bottom())
        return state;
    AbstractState st = state;
    switch (instr.kind) {
    case IrInstr::Kind::Assign: {
        AbstractValue v;
        if (instr.is_array_literal) {
            v = array_literal_value(st, instr, events);
        } else {
            v = eval_operand(st, instr.a, events, instr.span);
        }
        if (st.is_bottom())
            return st;
        if (v.kind == AbstractValue::Kind::Scalar && instr.dest.type &&
            instr.dest.type->is_scalar())
            v.type = instr.dest.type;
        write_place(st, instr.dest, std::move(v), events, instr.span);
        return st;
    }
    case IrInstr::Kind::BinOp: {
        AbstractValue av = eval_operand(st, instr.a, events, instr.span);
        AbstractValue bv = eval_operand(st, instr.b, events, instr.span);
        if (st.is_bottom())
            return st;
        Interval out;
        if (is_comparison(instr.bin_op)) {
            out = interval_compare(instr.bin_op, av.itv, bv.itv);
        } else if (is_logical(instr.bin_op)) {
            out = interval_logic(instr.bin_op, av.itv, bv.itv);
        } else {
            if ((instr.bin_op == BinaryOp::Div || instr.bin_op == BinaryOp::Mod) &&
                events) {
                AnalysisEvent ev;
                ev.kind = AnalysisEvent::Kind::DivisorInterval;
                ev.span = instr.span;
                ev.a = bv.itv;
                ev.b = av.itv;
                ev.a_name = render_operand(instr.b);
                ev.b_name = render_operand(instr.a);
                events->push_back(ev);
            }
            BinOpResult r =
                interval_binop(instr.bin_op, av.itv, bv.itv, instr.result_type->domain());
            out = r.value;
        }
        if (out.is_bottom() && !av.itv.is_bottom() && !bv.itv.is_bottom()) {
            kill_state(st); // every surviving execution reverts here
            return st;
        }
        write_place(st, instr.dest, AbstractValue::scalar(out, instr.result_type),
                    events, instr.span);
        return st;
    }
    case IrInstr::Kind::UnOp: {
        AbstractValue av = eval_operand(st, instr.a, events, instr.span);
        if (st.is_bottom())
            return st;
        Interval out;
        if (instr.un_op == UnaryOp::Not) {
            out = interval_not(av.itv);
        } else {
            BinOpResult r = interval_neg(av.itv, instr.result_type->domain());
            out = r.value;
            if (out.is_bottom() && !av.itv.is_bottom()) {
                kill_state(st);
                return st;
            }
        }
        write_place(st, instr.dest, AbstractValue::scalar(out, instr.result_type),
                    events, instr.span);
        return st;
    }
    case IrInstr::Kind::EnumCast: {
        AbstractValue av = eval_operand(st, instr.a, events, instr.span);
        if (st.is_bottom())
            return st;
        int n = static_cast<int>(instr.enum_decl->variants.size());
        if (events) {
            AnalysisEvent ev;
            ev.kind = AnalysisEvent::Kind::EnumCastSource;
            ev.span = instr.span;
            ev.a = av.itv;
            ev.a_name = render_operand(instr.a);
            ev.enum_decl = instr.enum_decl;
            ev.enum_size = n;
            events->push_back(ev);
        }
        Interval clipped = meet(av.itv, Interval(BigInt(0), BigInt(n - 1)));
        if (clipped.is_bottom() && !av.itv.is_bottom()) {
            kill_state(st);
            return st;
        }
        write_place(st, instr.dest, AbstractValue::scalar(clipped, instr.result_type),
                    events, instr.span);
        return st;
    }
    case IrInstr::Kind::Require:
    case IrInstr::Kind::Assert: {
        AbstractValue cond = eval_operand(st, instr.a, events, instr.span);
        if (st.is_bottom())
            return st;
        if (events) {
            AnalysisEvent ev;
            ev.kind = AnalysisEvent::Kind::ConditionVerdict;
            ev.span = instr.span;
            ev.a = cond.itv;
            ev.a_name = render_operand(instr.a);
            ev.origin = instr.kind == IrInstr::Kind::Require
                            ? AnalysisEvent::Origin::Require
                            : AnalysisEvent::Origin::Assert;
            events->push_back(ev);
        }
        if (cond.itv.is_bottom() || cond.itv == Interval::singleton(0)) {
            kill_state(st);
            return st;
        }
        return refine_condition(st, instr.a, true);
    }
    case IrInstr::Kind::Revert:
        kill_state(st);
        return st;
    case IrInstr::Kind::ExternalTransfer: {
        eval_operand(st, instr.a, events, instr.span);
        AbstractValue amount = eval_operand(st, instr.b, events, instr.span);
        if (st.is_bottom())
            return st;
        if (instr.amount_is_quotient && events) {
            AnalysisEvent ev;
            ev.kind = AnalysisEvent::Kind::ValueTransferOfQuotient;
            ev.span = instr.span;
            // interim intervals; replay() rewrites them with the
            // division-site values so refinement between the division and
            // the transfer cannot mask a reverting divisor
            ev.a = eval_scalar(st, instr.quotient_dividend);
            ev.b = eval_scalar(st, instr.quotient_divisor);
            ev.a_name = render_operand(instr.quotient_dividend);
            ev.b_name = render_operand(instr.quotient_divisor);
            ev.remainder_handled = instr.remainder_handled;
            events->push_back(ev);
        }
        (void)amount;
        return st;
    }
    case IrInstr::Kind::Return:
        for (const auto& r : instr.returns)
            eval_operand(st, r, events, instr.span);
        return st;
    }
    return st;
}

AbstractValue Engine::array_literal_value(AbstractState& st, const IrInstr& instr,
                                          std::vector<AnalysisEvent>* events) const {
    AbstractValue v;
    v.kind = AbstractValue::Kind::Array;
    v.type = instr.result_type;
    v.explicitly_assigned = true;
    size_t n = instr.array_elems.size();
    v.length = Interval::singleton(BigInt(n));
    TypePtr target = instr.dest.type;
    TypePtr elem_type = target && target->kind == MiniSolType::Kind::Array
                            ? target->elem
                            : nullptr;
    std::vector<AbstractValue> elems;
    for (const auto& e : instr.array_elems) {
        AbstractValue ev = eval_operand(st, e, events, instr.span);
        if (elem_type && ev.kind == AbstractValue::Kind::Scalar && elem_type->is_scalar())
            ev.type = elem_type;
        ev.explicitly_assigned = true;
        elems.push_back(std::move(ev));
    }
    bool fixed_small = target && target->kind == MiniSolType::Kind::Array &&
                       target->length && *target->length == n && n > 0 && n <= 64;
    if (fixed_small) {
        v.per_element = true;
        v.elems = std::move(elems);
    } else if (!elems.empty()) {
        AbstractValue summary = elems.front();
        for (size_t i = 1; i < elems.size(); i++)
            summary = join_value(summary, elems[i]);
        v.elems.push_back(std::move(summary));
    } else if (elem_type) {
        v.elems.push_back(AbstractValue::default_of(elem_type));
    }
    return v;
}

// ---- condition refinement ----------------------------------------------

AbstractState Engine::refine_condition(const AbstractState& state, const Operand& cond,
                                       bool assume) const {
    if (state.is_bottom())
        return state;
    switch (cond.kind) {
    case Operand::Kind::Literal: {
        bool truth = cond.lit != 0;
        if (truth == assume)
            return state;
        AbstractState st = state;
        kill_state(st);
        return st;
    }
    case Operand::Kind::PlaceRef: {
        if (cond.place->path.empty()) {
            auto def = cfg_.temp_defs.find(cond.place->root);
            if (def != cfg_.temp_defs.end()) {
                const IrInstr& d = def->second;
                if (d.kind == IrInstr::Kind::BinOp) {
                    if (is_comparison(d.bin_op))
                        return refine_compare(
                            state, assume ? d.bin_op : negate_cmp(d.bin_op), d.a, d.b);
                    if (d.bin_op == BinaryOp::And && assume)
                        return refine_condition(refine_condition(state, d.a, true),
                                                d.b, true);
                    if (d.bin_op == BinaryOp::Or && !assume)
                        return refine_condition(refine_condition(state, d.a, false),
                                                d.b, false);
                    return state;
                }
                if (d.kind == IrInstr::Kind::UnOp && d.un_op == UnaryOp::Not)
                    return refine_condition(state, d.a, !assume);
                if (d.kind == IrInstr::Kind::Assign && !d.is_array_literal)
                    return refine_condition(state, d.a, assume);
            }
        }
        // plain boolean location: pin it to the assumed value
        Interval v = eval_scalar(state, cond);
        Interval pinned = meet(v, Interval::singleton(assume ? 1 : 0));
        if (pinned.is_bottom() && !v.is_bottom()) {
            AbstractState st = state;
            kill_state(st);
            return st;
        }
        AbstractState st = state;
        store_refined(st, cond, pinned);
        return st;
    }
    default:
        return state;
    }
}

AbstractState Engine::refine_compare(const AbstractState& state, BinaryOp op,
                                     const Operand& a, const Operand& b) const {
    Interval A = eval_scalar(state, a);
    Interval B = eval_scalar(state, b);
    if (A.is_bottom() || B.is_bottom())
        return state;
    Interval a2 = A, b2 = B;
    switch (op) {
    case BinaryOp::Lt:
        a2 = meet(A, Interval(A.lo(), BigInt(B.hi() - 1)));
        b2 = meet(B, Interval(BigInt(A.lo() + 1), B.hi()));
        break;
    case BinaryOp::Le:
        a2 = meet(A, Interval(A.lo(), B.hi()));
        b2 = meet(B, Interval(A.lo(), B.hi()));
        break;
    case BinaryOp::Gt:
        a2 = meet(A, Interval(BigInt(B.lo() + 1), A.hi()));
        b2 = meet(B, Interval(B.lo(), BigInt(A.hi() - 1)));
        break;
    case BinaryOp::Ge:
        a2 = meet(A, Interval(B.lo(), A.hi()));
        b2 = meet(B, Interval(B.lo(), A.hi()));
        break;
    case BinaryOp::Eq:
        a2 = b2 = meet(A, B);
        break;
    case BinaryOp::Ne: {
        if (B.is_singleton()) {
            BigInt lo = A.lo(), hi = A.hi();
            if (lo == B.lo())
                lo += 1;
            if (hi == B.lo())
                hi -= 1;
            a2 = lo > hi ? Interval::bottom() : Interval(lo, hi);
        }
        if (A.is_singleton()) {
            BigInt lo = B.lo(), hi = B.hi();
            if (lo == A.lo())
                lo += 1;
            if (hi == A.lo())
                hi -= 1;
            b2 = lo > hi ? Interval::bottom() : Interval(lo, hi);
        }
        break;
    }
    default:
        return state;
    }
    if (a2.is_bottom() || b2.is_bottom()) {
        AbstractState st = state;
        kill_state(st);
        return st;
    }
    AbstractState st = state;
    store_refined(st, a, a2);
    store_refined(st, b, b2);
    // relational crumb: x < arr.length marks x as a valid index into arr
    auto is_simple_var = [](const Operand& o) {
        return o.kind == Operand::Kind::PlaceRef && o.place->path.empty();
    };
    auto is_length = [](const Operand& o) {
        return o.kind == Operand::Kind::PlaceRef && o.place->is_length_of();
    };
    if (op == BinaryOp::Lt && is_simple_var(a) && is_length(b)) {
        auto it = st.vars.find(a.place->root);
        if (it != st.vars.end() && it->second.kind == AbstractValue::Kind::Scalar)
            it->second.below_length_of.insert(b.place->root);
    }
    if (op == BinaryOp::Gt && is_length(a) && is_simple_var(b)) {
        auto it = st.vars.find(b.place->root);
        if (it != st.vars.end() && it->second.kind == AbstractValue::Kind::Scalar)
            it->second.below_length_of.insert(a.place->root);
    }
    return st;
}

bool Engine::store_refined(AbstractState& state, const Operand& op,
                           const Interval& itv) const {
    int var_id = 0;
    switch (op.kind) {
    case Operand::Kind::MsgSender:
        var_id = kMsgSenderId;
        break;
    case Operand::Kind::MsgValue:
        var_id = kMsgValueId;
        break;
    case Operand::Kind::PlaceRef: {
        const Place& p = *op.place;
        auto it = state.vars.find(p.root);
        if (it == state.vars.end())
            return false;
        if (p.path.empty()) {
            if (it->second.kind != AbstractValue::Kind::Scalar)
                return false;
            it->second.itv = itv;
            return true;
        }
        if (p.is_length_of()) {
            if (it->second.kind != AbstractValue::Kind::Array)
                return false;
            it->second.length = itv;
            return true;
        }
        // struct scalar fields: refine through all-Field paths (strong)
        AbstractValue* cur = &it->second;
        for (const auto& elem : p.path) {
            if (elem.kind != PathElem::Kind::Field)
                return false; // indexed locations only admit weak updates
            auto fit = cur->fields.find(elem.field);
            if (fit == cur->fields.end())
                return false;
            cur = &fit->second;
        }
        if (cur->kind != AbstractValue::Kind::Scalar)
            return false;
        cur->itv = itv;
        return true;
    }
    default:
        return false;
    }
    auto it = state.vars.find(var_id);
    if (it == state.vars.end() || it->second.kind != AbstractValue::Kind::Scalar)
        return false;
    it->second.itv = itv;
    return true;
}

// ---- worklist -----------------------------------------------------------

AbstractState Engine::edge_state(const AbstractState& pred_out, const BasicBlock& pred,
                                 EdgeKind kind) const {
    if (!pred.branch_cond || kind == EdgeKind::Unconditional)
        return pred_out;
    return refine_condition(pred_out, *pred.branch_cond, kind == EdgeKind::TrueBranch);
}

AnalysisResult Engine::run(const AbstractState& initial) const {
    FlowFn flow = [this](const IrInstr& instr, const AbstractState& st,
                         std::vector<AnalysisEvent>* events) {
        return transfer(instr, st, events);
    };
    OrderFn order = [](const AbstractState& a, const AbstractState& b) {
        return state_leq(a, b);
    };
    return run(initial, flow, order);
}

AnalysisResult Engine::run(const AbstractState& initial, const FlowFn& flow,
                           const OrderFn& order) const {
    AnalysisResult res;
    res.cfg = &cfg_;
    std::map<int, AbstractState> in, out;
    std::set<std::pair<int, int>> worklist; // (rpo position, block id)
    std::set<int> processed;
    worklist.insert({rpo_pos_.at(cfg_.entry), cfg_.entry});
    while (!worklist.empty()) {
        int node = worklist.begin()->second;
        worklist.erase(worklist.begin());
        int& visits = res.visit_counts[node];
        if (++visits > config_.max_visits)
            throw EngineError(
                "IterationLimitExceeded: block B" + std::to_string(node) +
                " visited more than " + std::to_string(config_.max_visits) + " times");
        res.iterations++;

        AbstractState merged = AbstractState::bottom();
        if (node == cfg_.entry) {
            merged = initial;
        } else {
            for (const auto& e : cfg_.edges) {
                if (e.to != node)
                    continue;
                auto po = out.find(e.from);
                if (po == out.end())
                    continue;
                merged = join_state(
                    merged, edge_state(po->second,
                                       cfg_.blocks[static_cast<size_t>(e.from)], e.kind));
            }
        }
        AbstractState old_in =
            in.count(node) ? in.at(node) : AbstractState::bottom();
        AbstractState new_in;
        if (loop_headers_.count(node) && visits > config_.widen_delay) {
            new_in = widen_state(old_in, join_state(old_in, merged), thresholds_);
            if (!order(new_in, old_in))
                res.widenings++;
        } else {
            // joining with the previous in-state keeps the visit sequence
            // monotone even when a predecessor's contribution shrinks
            new_in = join_state(old_in, merged);
        }
        if (processed.count(node) && order(new_in, old_in))
            continue; // no monotonic change
        processed.insert(node);
        in[node] = new_in;
        AbstractState st = new_in;
        for (const auto& instr : cfg_.blocks[static_cast<size_t>(node)].instrs)
            st = flow(instr, st, nullptr);
        out[node] = st;
        for (int succ : cfg_.successors(node))
            worklist.insert({rpo_pos_.at(succ), succ});
    }
    for (const auto& b : cfg_.blocks) {
        res.block_in[b.id] = in.count(b.id) ? in.at(b.id) : AbstractState::bottom();
        res.block_out[b.id] = out.count(b.id) ? out.at(b.id) : AbstractState::bottom();
    }
    replay(res, flow);
    return res;
}

void Engine::replay(AnalysisResult& res, const FlowFn& flow) const {
    for (int node : rpo_) {
        const BasicBlock& blk = cfg_.blocks[static_cast<size_t>(node)];
        AbstractState st = res.block_in.at(node);
        for (size_t i = 0; i < blk.instrs.size(); i++) {
            AbstractState before = st;
            st = flow(blk.instrs[i], st, &res.events);
            res.instr_states[{node, static_cast<int>(i)}] = {std::move(before), st};
        }
        if (blk.branch_cond && !st.is_bottom()) {
            AnalysisEvent ev;
            ev.kind = AnalysisEvent::Kind::ConditionVerdict;
            ev.span = operand_span(*blk.branch_cond);
            ev.a = eval_scalar(st, *blk.branch_cond);
            ev.a_name = render_operand(*blk.branch_cond);
            ev.origin = loop_headers_.count(node) ? AnalysisEvent::Origin::LoopHeader
                                                  : AnalysisEvent::Origin::IfBranch;
            res.events.push_back(ev);
        }
        res.block_out[node] = st;
    }
    // Rewrite quotient-transfer payloads with the intervals observed at the
    // division itself; later refinement must not hide a zero divisor.
    std::map<std::pair<std::string, std::string>, std::pair<Interval, Interval>> div_sites;
    for (auto& ev : res.events) {
        if (ev.kind == AnalysisEvent::Kind::DivisorInterval) {
            div_sites[{ev.b_name, ev.a_name}] = {ev.b, ev.a}; // (dividend, divisor)
        } else if (ev.kind == AnalysisEvent::Kind::ValueTransferOfQuotient) {
            auto it = div_sites.find({ev.a_name, ev.b_name});
            if (it != div_sites.end()) {
                ev.a = it->second.first;
                ev.b = it->second.second;
            }
        }
    }
    res.end_state = AbstractState::bottom();
    for (const auto& b : cfg_.blocks)
        if (cfg_.successors(b.id).empty())
            res.end_state = join_state(res.end_state, res.block_out.at(b.id));
}

AnalysisResult run_worklist(const Cfg& cfg, const AbstractState& initial,
                            const FlowFn& flow, const OrderFn& order,
                            EngineConfig config) {
    Engine engine(cfg, config);
    return engine.run(initial, flow, order);
}

// ---- whole-contract driver ----------------------------------------------

namespace {

AbstractValue eval_state_initializer(const Expr& e, const TypePtr& declared) {
    switch (e.kind) {
    case Expr::Kind::IntLit: {
        AbstractValue v = AbstractValue::scalar(Interval::singleton(e.int_value), declared);
        v.explicitly_assigned = true;
        return v;
    }
    case Expr::Kind::BoolLit: {
        AbstractValue v = AbstractValue::scalar(
            Interval::singleton(BigInt(e.bool_value ? 1 : 0)), declared);
        v.explicitly_assigned = true;
        return v;
    }
    case Expr::Kind::ArrayLit: {
        AbstractValue v;
        v.kind = AbstractValue::Kind::Array;
        v.type = declared;
        v.explicitly_assigned = true;
        size_t n = e.args.size();
        v.length = Interval::singleton(BigInt(n));
        TypePtr elem_type = declared->elem;
        std::vector<AbstractValue> elems;
        for (const auto& arg : e.args)
            elems.push_back(eval_state_initializer(*arg, elem_type));
        if (declared->length && *declared->length == n && n > 0 && n <= 64) {
            v.per_element = true;
            v.elems = std::move(elems);
        } else if (!elems.empty()) {
            AbstractValue summary = elems.front();
            for (size_t i = 1; i < elems.size(); i++)
                summary = join_value(summary, elems[i]);
            v.elems.push_back(std::move(summary));
        } else {
            v.elems.push_back(AbstractValue::default_of(elem_type));
        }
        return v;
    }
    default:
        return AbstractValue::top_of(declared);
    }
}

AbstractState make_initial(const std::map<int, AbstractValue>& state_vars,
                           const FunctionDecl& func) {
    AbstractState st;
    st.vars = state_vars;
    for (const auto& p : func.params)
        st.vars.emplace(p->var_id, AbstractValue::top_of(p->declared));
    st.vars.emplace(kMsgSenderId, AbstractValue::top_of(MiniSolType::address()));
    if (func.mut == Mutability::Payable) {
        st.vars.emplace(kMsgValueId, AbstractValue::top_of(MiniSolType::uint_t(256)));
    } else {
        st.vars.emplace(kMsgValueId,
                        AbstractValue::scalar(Interval::singleton(0),
                                              MiniSolType::uint_t(256)));
    }
    return st;
}

} // namespace

ContractAnalysis analyze_contract(const ContractDef& contract, const SymbolTable& symbols,
                                  const SourceFile& file, EngineConfig config) {
    ContractAnalysis ca;
    ca.contract = &contract;
    ca.symbols = &symbols;
    for (const auto& f : contract.functions) {
        Cfg cfg = lower_function(*f, symbols, file);
        validate_cfg(cfg);
        ca.cfgs.emplace_back(f.get(), std::move(cfg));
    }

    std::map<int, AbstractValue> s0;
    std::set<int> state_ids;
    for (const auto& [name, vd] : symbols.state_vars) {
        state_ids.insert(vd->var_id);
        s0.emplace(vd->var_id, vd->init
                                   ? eval_state_initializer(*vd->init, vd->declared)
                                   : AbstractValue::default_of(vd->declared));
    }

    const FunctionDecl* ctor = contract.constructor();
    std::map<int, AbstractValue> post_ctor = s0;
    for (auto& [f, cfg] : ca.cfgs) {
        if (f != ctor)
            continue;
        Engine engine(cfg, config);
        AnalysisResult r = engine.run(make_initial(s0, *f));
        if (!r.end_state.is_bottom()) {
            for (int id : state_ids) {
                auto it = r.end_state.vars.find(id);
                if (it != r.end_state.vars.end())
                    post_ctor[id] = it->second;
            }
        }
        ca.results.emplace(f, std::move(r));
    }

    std::set<int> written_outside_ctor;
    for (const auto& [f, cfg] : ca.cfgs)
        if (f != ctor)
            for (int id : cfg.written_roots)
                if (state_ids.count(id))
                    written_outside_ctor.insert(id);

    std::map<int, TypePtr> state_types;
    for (const auto& [name, vd] : symbols.state_vars)
        state_types[vd->var_id] = vd->declared;

    for (auto& [f, cfg] : ca.cfgs) {
        if (f == ctor)
            continue;
        std::map<int, AbstractValue> sv = post_ctor;
        for (int id : written_outside_ctor)
            sv[id] = join_value(post_ctor.at(id),
                                AbstractValue::top_of(state_types.at(id)));
        Engine engine(cfg, config);
        ca.results.emplace(f, engine.run(make_initial(sv, *f)));
    }
    return ca;
}

// ---- state dump ---------------------------------------------------------

namespace {

void render_value_lines(std::ostringstream& out, const std::string& name,
                        const AbstractValue& v, const Cfg& cfg, int root_id) {
    switch (v.kind) {
    case AbstractValue::Kind::Scalar:
        out << "  " << name << " ∈ " << render_interval(v.itv) << "\n";
        return;
    case AbstractValue::Kind::Array:
        out << "  " << name << ".length ∈ " << render_interval(v.length) << "\n";
        render_value_lines(out, name + "[*]", v.element_summary(), cfg, root_id);
        return;
    case AbstractValue::Kind::Mapping: {
        AbstractValue read =
            join_value(AbstractValue::default_of(v.type->value), v.elems[0]);
        auto keys = cfg.mapping_keys.find(root_id);
        if (keys != cfg.mapping_keys.end() && !keys->second.empty()) {
            for (const auto& key : keys->second)
                render_value_lines(out, name + "[" + key + "]", read, cfg, root_id);
        } else {
            render_value_lines(out, name + "[*]", read, cfg, root_id);
        }
        return;
    }
    case AbstractValue::Kind::Struct:
        for (const auto& [fname, fv] : v.fields)
            render_value_lines(out, name + "." + fname, fv, cfg, root_id);
        return;
    }
}

void render_state_lines(std::ostringstream& out, const AbstractState& st,
                        const Cfg& cfg, const SymbolTable& symbols) {
    if (st.is_bottom()) {
        out << "  unreachable\n";
        return;
    }
    for (const auto& [id, value] : st.vars) {
        if (cfg.temp_names.count(id))
            continue;
        auto name = symbols.names.find(id);
        if (name == symbols.names.end())
            continue;
        render_value_lines(out, name->second, value, cfg, id);
    }
}

} // namespace

std::string dump_states(const Cfg& cfg, const AnalysisResult& result,
                        const SymbolTable& symbols) {
    std::ostringstream out;
    out << "function " << (cfg.function ? cfg.function->name : "?") << ":\n";
    for (const auto& blk : cfg.blocks) {
        for (size_t i = 0; i < blk.instrs.size(); i++) {
            out << "B" << blk.id << "#" << i << " " << render_instr(blk.instrs[i])
                << "\n";
            auto it = result.instr_states.find({blk.id, static_cast<int>(i)});
            if (it != result.instr_states.end())
                render_state_lines(out, it->second.first, cfg, symbols);
            out << "\n";
        }
    }
    out << "End\n";
    render_state_lines(out, result.end_state, cfg, symbols);
    return out.str();
}

} // namespace minisol

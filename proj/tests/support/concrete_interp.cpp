#include "concrete_interp.hpp"

#include <sstream>
#include <stdexcept>

namespace minisol::testing {

namespace {

BigInt uniform_in(const BigInt& lo, const BigInt& hi, std::mt19937_64& rng) {
    BigInt width = hi - lo + 1;
    BigInt r = 0;
    for (int i = 0; i < 5; i++)
        r = (r << 64) | BigInt(rng());
    return lo + r % width;
}

struct Reverted {};

class Interp {
public:
    Interp(const Cfg& cfg, ConcreteState initial, std::mt19937_64& rng, int max_steps)
        : cfg_(cfg), state_(std::move(initial)), rng_(rng), max_steps_(max_steps) {}

    ConcreteRun go() {
        ConcreteRun run;
        int block = cfg_.entry;
        int steps = 0;
        try {
            for (;;) {
                const BasicBlock& bb = cfg_.blocks[block];
                for (size_t i = 0; i < bb.instrs.size(); i++) {
                    if (++steps > max_steps_) {
                        run.outcome = RunOutcome::StepLimit;
                        run.trace = std::move(trace_);
                        return run;
                    }
                    trace_.push_back({block, static_cast<int>(i), state_});
                    if (exec(bb.instrs[i])) {
                        run.outcome = RunOutcome::Finished;
                        run.trace = std::move(trace_);
                        return run;
                    }
                }
                auto succs = cfg_.successors(block);
                if (succs.empty()) {
                    run.outcome = RunOutcome::Finished;
                    run.trace = std::move(trace_);
                    return run;
                }
                if (bb.branch_cond) {
                    bool taken = eval(*bb.branch_cond).scalar != 0;
                    int next = -1;
                    for (const auto& e : cfg_.edges)
                        if (e.from == block &&
                            e.kind == (taken ? EdgeKind::TrueBranch : EdgeKind::FalseBranch))
                            next = e.to;
                    if (next < 0)
                        throw std::logic_error("missing branch edge");
                    block = next;
                } else {
                    block = succs.front();
                }
            }
        } catch (const Reverted&) {
            run.outcome = RunOutcome::Reverted;
            run.trace = std::move(trace_);
            return run;
        }
    }

private:
    const Cfg& cfg_;
    ConcreteState state_;
    std::mt19937_64& rng_;
    int max_steps_;
    std::vector<TraceEntry> trace_;

    static void check_domain(const BigInt& v, const TypePtr& type) {
        TypeDomain d = type->domain();
        if (v < d.min || v > d.max)
            throw Reverted{};
    }

    ConcreteValue eval(const Operand& op) {
        switch (op.kind) {
        case Operand::Kind::Literal: {
            ConcreteValue v;
            v.type = op.type;
            v.scalar = op.lit;
            return v;
        }
        case Operand::Kind::MsgSender:
            return lookup_root(-1, MiniSolType::address());
        case Operand::Kind::MsgValue:
            return lookup_root(-2, MiniSolType::uint_t());
        case Operand::Kind::Havoc:
            return sample_within(AbstractValue::top_of(op.type), rng_);
        case Operand::Kind::PlaceRef:
            return read_place(*op.place);
        }
        throw std::logic_error("bad operand kind");
    }

    ConcreteValue lookup_root(int id, const TypePtr& type) {
        auto it = state_.vars.find(id);
        if (it != state_.vars.end())
            return it->second;
        return ConcreteValue::default_of(type);
    }

    ConcreteValue read_place(const Place& p) {
        // `p.type` is the accessed location's type, which is the root's type
        // only when the path is empty.
        ConcreteValue cur = lookup_root(p.root, p.path.empty() ? p.type : nullptr);
        for (const auto& elem : p.path)
            cur = step_read(cur, elem);
        return cur;
    }

    ConcreteValue step_read(const ConcreteValue& cur, const PathElem& elem) {
        switch (elem.kind) {
        case PathElem::Kind::Length: {
            ConcreteValue v;
            v.type = MiniSolType::uint_t();
            v.scalar = static_cast<long>(cur.elems.size());
            return v;
        }
        case PathElem::Kind::Field: {
            auto it = cur.fields.find(elem.field);
            if (it != cur.fields.end())
                return it->second;
            if (cur.type && cur.type->struct_decl)
                for (const auto& f : cur.type->struct_decl->fields)
                    if (f->name == elem.field)
                        return ConcreteValue::default_of(f->declared);
            throw std::logic_error("unknown struct field " + elem.field);
        }
        case PathElem::Kind::Index: {
            BigInt key = eval(elem.index).scalar;
            if (cur.kind == ConcreteValue::Kind::Mapping) {
                auto it = cur.map_elems.find(key.str());
                if (it != cur.map_elems.end())
                    return it->second;
                return ConcreteValue::default_of(cur.type ? cur.type->value : nullptr);
            }
            if (key < 0 || key >= BigInt(cur.elems.size()))
                throw Reverted{}; // out-of-bounds access
            return cur.elems[static_cast<size_t>(key)];
        }
        }
        throw std::logic_error("bad path elem");
    }

    void write_place(const Place& p, ConcreteValue value) {
        if (p.path.empty()) {
            state_.vars[p.root] = std::move(value);
            return;
        }
        ConcreteValue root = lookup_root(p.root, nullptr);
        write_path(root, p, 0, value);
        state_.vars[p.root] = std::move(root);
    }

    void write_path(ConcreteValue& cur, const Place& p, size_t depth, const ConcreteValue& value) {
        const PathElem& elem = p.path[depth];
        bool last = depth + 1 == p.path.size();
        switch (elem.kind) {
        case PathElem::Kind::Length:
            throw std::logic_error("length is not assignable");
        case PathElem::Kind::Field: {
            if (!cur.fields.count(elem.field) && cur.type && cur.type->struct_decl)
                for (const auto& f : cur.type->struct_decl->fields)
                    if (f->name == elem.field)
                        cur.fields[elem.field] = ConcreteValue::default_of(f->declared);
            auto it = cur.fields.find(elem.field);
            if (it == cur.fields.end())
                throw std::logic_error("unknown struct field " + elem.field);
            if (last)
                it->second = value;
            else
                write_path(it->second, p, depth + 1, value);
            return;
        }
        case PathElem::Kind::Index: {
            BigInt key = eval(elem.index).scalar;
            if (cur.kind == ConcreteValue::Kind::Mapping) {
                std::string k = key.str();
                if (!cur.map_elems.count(k))
                    cur.map_elems[k] =
                        ConcreteValue::default_of(cur.type ? cur.type->value : nullptr);
                if (last)
                    cur.map_elems[k] = value;
                else
                    write_path(cur.map_elems[k], p, depth + 1, value);
                return;
            }
            if (key < 0 || key >= BigInt(cur.elems.size()))
                throw Reverted{};
            auto& slot = cur.elems[static_cast<size_t>(key)];
            if (last)
                slot = value;
            else
                write_path(slot, p, depth + 1, value);
            return;
        }
        }
    }

    // Returns true when the function finished (Return executed).
    bool exec(const IrInstr& instr) {
        switch (instr.kind) {
        case IrInstr::Kind::Assign: {
            if (instr.is_array_literal) {
                ConcreteValue v;
                v.kind = ConcreteValue::Kind::Array;
                v.type = instr.result_type;
                for (const auto& e : instr.array_elems)
                    v.elems.push_back(eval(e));
                write_place(instr.dest, std::move(v));
                return false;
            }
            write_place(instr.dest, eval(instr.a));
            return false;
        }
        case IrInstr::Kind::BinOp: {
            BigInt a = eval(instr.a).scalar;
            BigInt b = eval(instr.b).scalar;
            ConcreteValue v;
            v.type = instr.result_type;
            if (is_arith(instr.bin_op)) {
                BigInt r;
                switch (instr.bin_op) {
                case BinaryOp::Add: r = a + b; break;
                case BinaryOp::Sub: r = a - b; break;
                case BinaryOp::Mul: r = a * b; break;
                case BinaryOp::Div:
                    if (b == 0)
                        throw Reverted{};
                    r = a / b; // cpp_int truncates toward zero, as the EVM does
                    break;
                case BinaryOp::Mod:
                    if (b == 0)
                        throw Reverted{};
                    r = a % b;
                    break;
                default: throw std::logic_error("not arith");
                }
                check_domain(r, instr.result_type);
                v.scalar = r;
            } else if (is_comparison(instr.bin_op)) {
                bool r = false;
                switch (instr.bin_op) {
                case BinaryOp::Lt: r = a < b; break;
                case BinaryOp::Le: r = a <= b; break;
                case BinaryOp::Gt: r = a > b; break;
                case BinaryOp::Ge: r = a >= b; break;
                case BinaryOp::Eq: r = a == b; break;
                case BinaryOp::Ne: r = a != b; break;
                default: throw std::logic_error("not comparison");
                }
                v.scalar = r ? 1 : 0;
            } else {
                v.scalar = (instr.bin_op == BinaryOp::And) ? BigInt((a != 0 && b != 0) ? 1 : 0)
                                                           : BigInt((a != 0 || b != 0) ? 1 : 0);
            }
            write_place(instr.dest, std::move(v));
            return false;
        }
        case IrInstr::Kind::UnOp: {
            BigInt a = eval(instr.a).scalar;
            ConcreteValue v;
            v.type = instr.result_type;
            if (instr.un_op == UnaryOp::Not) {
                v.scalar = (a == 0) ? 1 : 0;
            } else {
                BigInt r = -a;
                check_domain(r, instr.result_type);
                v.scalar = r;
            }
            write_place(instr.dest, std::move(v));
            return false;
        }
        case IrInstr::Kind::EnumCast: {
            BigInt a = eval(instr.a).scalar;
            int n = instr.enum_decl ? static_cast<int>(instr.enum_decl->variants.size()) : 0;
            if (a < 0 || a >= n)
                throw Reverted{};
            ConcreteValue v;
            v.type = instr.result_type;
            v.scalar = a;
            write_place(instr.dest, std::move(v));
            return false;
        }
        case IrInstr::Kind::Require:
        case IrInstr::Kind::Assert:
            if (eval(instr.a).scalar == 0)
                throw Reverted{};
            return false;
        case IrInstr::Kind::Revert:
            throw Reverted{};
        case IrInstr::Kind::ExternalTransfer:
            (void)eval(instr.a);
            (void)eval(instr.b);
            return false;
        case IrInstr::Kind::Return:
            for (const auto& r : instr.returns)
                (void)eval(r);
            return true;
        }
        throw std::logic_error("bad instr kind");
    }
};

} // namespace

ConcreteValue ConcreteValue::default_of(const TypePtr& type) {
    ConcreteValue v;
    v.type = type;
    if (!type)
        return v;
    switch (type->kind) {
    case MiniSolType::Kind::Array:
        v.kind = Kind::Array;
        if (type->length)
            for (uint64_t i = 0; i < *type->length; i++)
                v.elems.push_back(default_of(type->elem));
        return v;
    case MiniSolType::Kind::Mapping:
        v.kind = Kind::Mapping;
        return v;
    case MiniSolType::Kind::Struct:
        v.kind = Kind::Struct;
        if (type->struct_decl)
            for (const auto& f : type->struct_decl->fields)
                v.fields[f->name] = default_of(f->declared);
        return v;
    default:
        v.scalar = 0;
        return v;
    }
}

ConcreteRun run_concrete(const Cfg& cfg, ConcreteState initial, std::mt19937_64& rng,
                         int max_steps) {
    return Interp(cfg, std::move(initial), rng, max_steps).go();
}

ConcreteValue sample_within(const AbstractValue& v, std::mt19937_64& rng) {
    ConcreteValue out;
    out.type = v.type;
    switch (v.kind) {
    case AbstractValue::Kind::Scalar:
        out.scalar = v.itv.is_bottom() ? BigInt(0) : uniform_in(v.itv.lo(), v.itv.hi(), rng);
        return out;
    case AbstractValue::Kind::Array: {
        out.kind = ConcreteValue::Kind::Array;
        BigInt lo = v.length.is_bottom() ? BigInt(0) : v.length.lo();
        BigInt hi = v.length.is_bottom() ? BigInt(0) : v.length.hi();
        if (hi > lo + 3)
            hi = lo + 3; // keep concrete arrays small
        BigInt len = uniform_in(lo, hi, rng);
        for (BigInt i = 0; i < len; i++) {
            const AbstractValue& elem =
                (v.per_element && i < BigInt(v.elems.size()))
                    ? v.elems[static_cast<size_t>(i)]
                    : v.summary();
            out.elems.push_back(sample_within(elem, rng));
        }
        return out;
    }
    case AbstractValue::Kind::Mapping: {
        out.kind = ConcreteValue::Kind::Mapping;
        // A couple of populated slots inside the summary; unwritten keys read
        // as defaults, which the analysis joins in on every mapping read.
        for (const char* key : {"1", "2"})
            out.map_elems[key] = sample_within(v.summary(), rng);
        return out;
    }
    case AbstractValue::Kind::Struct:
        out.kind = ConcreteValue::Kind::Struct;
        for (const auto& [name, f] : v.fields)
            out.fields[name] = sample_within(f, rng);
        return out;
    }
    return out;
}

bool concrete_in_abstract(const ConcreteValue& cv, const AbstractValue& av) {
    switch (av.kind) {
    case AbstractValue::Kind::Scalar:
        return cv.kind == ConcreteValue::Kind::Scalar && av.itv.contains(cv.scalar);
    case AbstractValue::Kind::Array: {
        if (cv.kind != ConcreteValue::Kind::Array)
            return false;
        if (!av.length.contains(BigInt(cv.elems.size())))
            return false;
        for (size_t i = 0; i < cv.elems.size(); i++) {
            const AbstractValue& elem =
                (av.per_element && i < av.elems.size()) ? av.elems[i] : av.summary();
            if (!concrete_in_abstract(cv.elems[i], elem))
                return false;
        }
        return true;
    }
    case AbstractValue::Kind::Mapping: {
        if (cv.kind != ConcreteValue::Kind::Mapping)
            return false;
        AbstractValue bound = av.summary();
        if (av.type && av.type->value)
            bound = join_value(AbstractValue::default_of(av.type->value), bound);
        for (const auto& [key, val] : cv.map_elems)
            if (!concrete_in_abstract(val, bound))
                return false;
        return true;
    }
    case AbstractValue::Kind::Struct: {
        if (cv.kind != ConcreteValue::Kind::Struct)
            return false;
        for (const auto& [name, f] : av.fields) {
            auto it = cv.fields.find(name);
            if (it == cv.fields.end())
                continue;
            if (!concrete_in_abstract(it->second, f))
                return false;
        }
        return true;
    }
    }
    return false;
}

std::string check_trace(const ConcreteRun& run, const AnalysisResult& result) {
    for (const TraceEntry& entry : run.trace) {
        auto it = result.instr_states.find({entry.block, entry.instr});
        if (it == result.instr_states.end()) {
            std::ostringstream os;
            os << "B" << entry.block << "#" << entry.instr
               << " executed concretely but has no abstract state";
            return os.str();
        }
        const AbstractState& in = it->second.first;
        if (in.is_bottom()) {
            std::ostringstream os;
            os << "B" << entry.block << "#" << entry.instr
               << " executed concretely but is abstractly unreachable";
            return os.str();
        }
        for (const auto& [id, av] : in.vars) {
            auto cit = entry.before.vars.find(id);
            if (cit == entry.before.vars.end())
                continue;
            if (!concrete_in_abstract(cit->second, av)) {
                std::ostringstream os;
                os << "B" << entry.block << "#" << entry.instr << ": var " << id;
                if (cit->second.kind == ConcreteValue::Kind::Scalar)
                    os << " = " << cit->second.scalar.str();
                os << " escapes its abstract value";
                if (av.kind == AbstractValue::Kind::Scalar)
                    os << " " << render_interval(av.itv);
                return os.str();
            }
        }
    }
    return "";
}

} // namespace minisol::testing

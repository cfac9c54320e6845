#include "minisol/ir.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "minisol/error.hpp"

namespace minisol {

Operand Operand::literal(BigInt v, TypePtr type) {
    Operand op;
    op.kind = Kind::Literal;
    op.lit = std::move(v);
    op.type = std::move(type);
    return op;
}

Operand Operand::place_ref(Place p) {
    Operand op;
    op.kind = Kind::PlaceRef;
    op.type = p.type;
    op.place = std::make_shared<Place>(std::move(p));
    return op;
}

Operand Operand::msg_sender() {
    Operand op;
    op.kind = Kind::MsgSender;
    op.type = MiniSolType::address();
    return op;
}

Operand Operand::msg_value() {
    Operand op;
    op.kind = Kind::MsgValue;
    op.type = MiniSolType::uint_t(256);
    return op;
}

Operand Operand::havoc(TypePtr type) {
    Operand op;
    op.kind = Kind::Havoc;
    op.type = std::move(type);
    return op;
}

std::string render_place(const Place& p) {
    std::string out = p.root_name;
    for (const auto& elem : p.path) {
        switch (elem.kind) {
        case PathElem::Kind::Field:
            out += "." + elem.field;
            break;
        case PathElem::Kind::Index:
            out += "[" + render_operand(elem.index) + "]";
            break;
        case PathElem::Kind::Length:
            out += ".length";
            break;
        }
    }
    return out;
}

std::string render_operand(const Operand& op) {
    switch (op.kind) {
    case Operand::Kind::Literal:
        return op.lit.str();
    case Operand::Kind::PlaceRef:
        return render_place(*op.place);
    case Operand::Kind::MsgSender:
        return "msg.sender";
    case Operand::Kind::MsgValue:
        return "msg.value";
    case Operand::Kind::Havoc:
        return "?";
    }
    return "?";
}

std::string render_instr(const IrInstr& instr) {
    switch (instr.kind) {
    case IrInstr::Kind::Assign:
        if (instr.is_array_literal) {
            std::string out = render_place(instr.dest) + " := [";
            for (size_t i = 0; i < instr.array_elems.size(); i++) {
                if (i)
                    out += ", ";
                out += render_operand(instr.array_elems[i]);
            }
            return out + "]";
        }
        return render_place(instr.dest) + " := " + render_operand(instr.a);
    case IrInstr::Kind::BinOp:
        return render_place(instr.dest) + " := " + render_operand(instr.a) + " " +
               binary_op_text(instr.bin_op) + " " + render_operand(instr.b);
    case IrInstr::Kind::UnOp:
        return render_place(instr.dest) + " := " +
               (instr.un_op == UnaryOp::Not ? "!" : "-") + render_operand(instr.a);
    case IrInstr::Kind::EnumCast:
        return render_place(instr.dest) + " := " + instr.enum_decl->name + "(" +
               render_operand(instr.a) + ")";
    case IrInstr::Kind::Require:
        return "require(" + render_operand(instr.a) + ")";
    case IrInstr::Kind::Assert:
        return "assert(" + render_operand(instr.a) + ")";
    case IrInstr::Kind::Revert:
        return "revert";
    case IrInstr::Kind::ExternalTransfer:
        return "transfer " + render_operand(instr.b) + " to " + render_operand(instr.a);
    case IrInstr::Kind::Return: {
        std::string out = "return";
        for (size_t i = 0; i < instr.returns.size(); i++)
            out += (i ? ", " : " ") + render_operand(instr.returns[i]);
        return out;
    }
    }
    return "?";
}

std::vector<int> Cfg::successors(int node) const {
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.from == node)
            out.push_back(e.to);
    return out;
}

std::vector<int> Cfg::predecessors(int node) const {
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.to == node)
            out.push_back(e.from);
    return out;
}

const CfgEdge* Cfg::edge_between(int from, int to) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to)
            return &e;
    return nullptr;
}

std::vector<int> reverse_post_order(const Cfg& cfg) {
    std::vector<bool> visited(cfg.blocks.size(), false);
    std::vector<int> post;
    // Iterative DFS; successor order follows edge insertion order, which is
    // fixed by lowering, so the result is deterministic.
    struct Frame {
        int node;
        std::vector<int> succs;
        size_t next = 0;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{cfg.entry, cfg.successors(cfg.entry)});
    visited[static_cast<size_t>(cfg.entry)] = true;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < top.succs.size()) {
            int succ = top.succs[top.next++];
            if (!visited[static_cast<size_t>(succ)]) {
                visited[static_cast<size_t>(succ)] = true;
                stack.push_back(Frame{succ, cfg.successors(succ)});
            }
        } else {
            post.push_back(top.node);
            stack.pop_back();
        }
    }
    std::reverse(post.begin(), post.end());
    return post;
}

void validate_cfg(const Cfg& cfg) {
    auto fail = [](const std::string& msg) { throw EngineError("invalid CFG: " + msg); };
    if (cfg.blocks.empty())
        fail("no blocks");
    if (!cfg.predecessors(cfg.entry).empty())
        fail("entry block has predecessors");
    for (const auto& block : cfg.blocks) {
        int uncond = 0, true_edges = 0, false_edges = 0;
        for (const auto& e : cfg.edges) {
            if (e.from != block.id)
                continue;
            switch (e.kind) {
            case EdgeKind::Unconditional: uncond++; break;
            case EdgeKind::TrueBranch: true_edges++; break;
            case EdgeKind::FalseBranch: false_edges++; break;
            }
        }
        if (block.branch_cond) {
            if (true_edges != 1 || false_edges != 1 || uncond != 0)
                fail("conditional block " + std::to_string(block.id) +
                     " lacks exactly one true and one false successor");
        } else if (uncond + true_edges + false_edges != 0) {
            if (uncond != 1 || true_edges || false_edges)
                fail("block " + std::to_string(block.id) +
                     " must have exactly one unconditional successor");
        }
    }
    std::vector<int> rpo = reverse_post_order(cfg);
    if (rpo.size() != cfg.blocks.size())
        fail("unreachable blocks remain");
    // Temps are single-assignment and defined before use within their block.
    std::map<int, int> assignments;
    for (const auto& block : cfg.blocks) {
        for (const auto& instr : block.instrs) {
            bool writes = instr.kind == IrInstr::Kind::Assign ||
                          instr.kind == IrInstr::Kind::BinOp ||
                          instr.kind == IrInstr::Kind::UnOp ||
                          instr.kind == IrInstr::Kind::EnumCast;
            if (writes && cfg.temp_names.count(instr.dest.root))
                assignments[instr.dest.root]++;
        }
    }
    for (const auto& [id, count] : assignments)
        if (count != 1)
            fail("temp assigned " + std::to_string(count) + " times");
}

std::string dump_cfg(const Cfg& cfg) {
    std::ostringstream out;
    for (const auto& block : cfg.blocks) {
        out << "B" << block.id << ":";
        if (block.instrs.empty() && !block.branch_cond)
            out << " <empty>";
        out << "\n";
        for (const auto& instr : block.instrs)
            out << "  " << render_instr(instr) << "\n";
        if (block.branch_cond)
            out << "  branch " << render_operand(*block.branch_cond) << "\n";
        out << "\n";
    }
    out << "edges:";
    bool first = true;
    for (const auto& e : cfg.edges) {
        out << (first ? " " : ", ") << "B" << e.from << "->B" << e.to;
        switch (e.kind) {
        case EdgeKind::Unconditional: break;
        case EdgeKind::TrueBranch: out << " [true]"; break;
        case EdgeKind::FalseBranch: out << " [false]"; break;
        }
        first = false;
    }
    out << "\n";
    return out.str();
}

} // namespace minisol

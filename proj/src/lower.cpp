#include "minisol/lower.hpp"

#include <algorithm>
#include <cassert>

#include "minisol/error.hpp"

namespace minisol {

namespace {

class FunctionLowerer {
public:
    FunctionLowerer(const FunctionDecl& func, const SymbolTable& symbols,
                    const SourceFile& file)
        : func_(func), symbols_(symbols), file_(file) {
        next_temp_ = symbols.next_var_id;
    }

    Cfg run() {
        cfg_.function = &func_;
        cfg_.entry = new_block();
        cur_ = cfg_.entry;

        // Modifier bodies wrap the function body; `_;` descends one level.
        for (const auto& name : func_.modifiers) {
            const ModifierDecl* mod = symbols_.find_modifier(name);
            if (mod && mod->body)
                bodies_.push_back(mod->body.get());
        }
        if (func_.body)
            bodies_.push_back(func_.body.get());
        if (!bodies_.empty())
            lower_stmt(*bodies_.front());

        prune_unreachable();
        tag_quotient_transfers();
        std::sort(cfg_.literals.begin(), cfg_.literals.end());
        cfg_.literals.erase(std::unique(cfg_.literals.begin(), cfg_.literals.end()),
                            cfg_.literals.end());
        return std::move(cfg_);
    }

private:
    const FunctionDecl& func_;
    const SymbolTable& symbols_;
    const SourceFile& file_;
    Cfg cfg_;
    int cur_ = 0;
    bool terminated_ = false; // current block ended with return/revert
    int next_temp_ = 0;
    std::vector<const Stmt*> bodies_;
    size_t depth_ = 0;

    BasicBlock& block(int id) { return cfg_.blocks[static_cast<size_t>(id)]; }

    int new_block() {
        int id = static_cast<int>(cfg_.blocks.size());
        cfg_.blocks.push_back(BasicBlock{id});
        return id;
    }

    void edge(int from, int to, EdgeKind kind) {
        cfg_.edges.push_back(CfgEdge{from, to, kind});
    }

    void emit(IrInstr instr) {
        bool writes = instr.kind == IrInstr::Kind::Assign ||
                      instr.kind == IrInstr::Kind::BinOp ||
                      instr.kind == IrInstr::Kind::UnOp ||
                      instr.kind == IrInstr::Kind::EnumCast;
        if (writes) {
            cfg_.written_roots.insert(instr.dest.root);
            if (cfg_.temp_names.count(instr.dest.root))
                cfg_.temp_defs.emplace(instr.dest.root, instr);
        }
        block(cur_).instrs.push_back(std::move(instr));
    }

    // Opens a fresh block after a return/revert; anything lowered into it is
    // dead code and gets pruned unless control re-joins it.
    void seal_current() {
        terminated_ = true;
        cur_ = new_block();
        terminated_ = false;
    }

    Place make_temp(TypePtr type) {
        int id = next_temp_++;
        std::string name = "%" + std::to_string(id - symbols_.next_var_id);
        cfg_.temp_names.emplace(id, name);
        return Place{id, name, {}, std::move(type)};
    }

    void note_literal(const BigInt& v) { cfg_.literals.push_back(v); }

    // ---- expressions ----------------------------------------------------

    Place lower_place(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::Ident: {
            assert(e.decl);
            return Place{e.decl->var_id, e.decl->name, {}, e.type};
        }
        case Expr::Kind::Member: {
            if (e.builtin == Builtin::ArrayLength) {
                Place p = lower_place(*e.lhs);
                PathElem elem;
                elem.kind = PathElem::Kind::Length;
                p.path.push_back(std::move(elem));
                p.type = e.type;
                return p;
            }
            Place p = lower_place(*e.lhs);
            PathElem elem;
            elem.kind = PathElem::Kind::Field;
            elem.field = e.name;
            p.path.push_back(std::move(elem));
            p.type = e.type;
            return p;
        }
        case Expr::Kind::Index: {
            Place p = lower_place(*e.lhs);
            if (e.lhs->type && e.lhs->type->kind == MiniSolType::Kind::Mapping)
                note_mapping_key(p.root, *e.rhs);
            PathElem elem;
            elem.kind = PathElem::Kind::Index;
            elem.index = lower_expr(*e.rhs);
            p.path.push_back(std::move(elem));
            p.type = e.type;
            return p;
        }
        default:
            throw EngineError("expression is not a storage location");
        }
    }

    void note_mapping_key(int root, const Expr& key) {
        std::string text{file_.slice(key.span)};
        auto& keys = cfg_.mapping_keys[root];
        if (std::find(keys.begin(), keys.end(), text) == keys.end())
            keys.push_back(std::move(text));
    }

    Operand lower_expr(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            note_literal(e.int_value);
            return Operand::literal(e.int_value, e.type);
        case Expr::Kind::BoolLit:
            return Operand::literal(BigInt(e.bool_value ? 1 : 0), e.type);
        case Expr::Kind::StringLit:
            return Operand::literal(BigInt(0), e.type);
        case Expr::Kind::Ident:
            return Operand::place_ref(lower_place(e));
        case Expr::Kind::Member:
            if (e.builtin == Builtin::MsgSender)
                return Operand::msg_sender();
            if (e.builtin == Builtin::MsgValue)
                return Operand::msg_value();
            return Operand::place_ref(lower_place(e));
        case Expr::Kind::Index:
            return Operand::place_ref(lower_place(e));
        case Expr::Kind::Call:
            return lower_call(e);
        case Expr::Kind::Binary: {
            Operand a = lower_expr(*e.lhs);
            Operand b = lower_expr(*e.rhs);
            Place dest = make_temp(e.type);
            IrInstr instr;
            instr.kind = IrInstr::Kind::BinOp;
            instr.span = e.span;
            instr.dest = dest;
            instr.a = std::move(a);
            instr.b = std::move(b);
            instr.bin_op = e.bin_op;
            instr.result_type = e.type;
            emit(std::move(instr));
            return Operand::place_ref(std::move(dest));
        }
        case Expr::Kind::Unary: {
            Operand a = lower_expr(*e.lhs);
            Place dest = make_temp(e.type);
            IrInstr instr;
            instr.kind = IrInstr::Kind::UnOp;
            instr.span = e.span;
            instr.dest = dest;
            instr.a = std::move(a);
            instr.un_op = e.un_op;
            instr.result_type = e.type;
            emit(std::move(instr));
            return Operand::place_ref(std::move(dest));
        }
        case Expr::Kind::ArrayLit:
            // Only valid directly on the right of `=`; handled there.
            return Operand::havoc(e.type);
        }
        return Operand::havoc(e.type);
    }

    Operand lower_call(const Expr& e) {
        if (e.cast_enum) {
            Operand src = lower_expr(*e.args.front());
            Place dest = make_temp(e.type);
            IrInstr instr;
            instr.kind = IrInstr::Kind::EnumCast;
            instr.span = e.span;
            instr.dest = dest;
            instr.a = std::move(src);
            instr.result_type = e.type;
            instr.enum_decl = e.cast_enum;
            emit(std::move(instr));
            return Operand::place_ref(std::move(dest));
        }
        if (e.is_payable_cast)
            return lower_expr(*e.args.front());
        if (e.callee && e.callee->kind == Expr::Kind::Member &&
            (e.callee->name == "transfer" || e.callee->name == "call" ||
             e.callee->name == "send")) {
            Operand recipient = lower_expr(*e.callee->lhs);
            Operand amount = e.call_value ? lower_expr(*e.call_value)
                             : !e.args.empty() ? lower_expr(*e.args.front())
                                               : Operand::literal(BigInt(0),
                                                                  MiniSolType::uint_t(256));
            IrInstr instr;
            instr.kind = IrInstr::Kind::ExternalTransfer;
            instr.span = e.span;
            instr.a = std::move(recipient);
            instr.b = std::move(amount);
            emit(std::move(instr));
            return Operand::havoc(MiniSolType::boolean());
        }
        throw EngineError("unexpected call expression survived resolution");
    }

    // ---- statements -----------------------------------------------------

    void assign_to(Place dest, const Expr& value, Span span) {
        if (value.kind == Expr::Kind::ArrayLit) {
            IrInstr instr;
            instr.kind = IrInstr::Kind::Assign;
            instr.span = span;
            instr.dest = std::move(dest);
            instr.result_type = value.type;
            instr.is_array_literal = true;
            for (const auto& elem : value.args)
                instr.array_elems.push_back(lower_expr(*elem));
            emit(std::move(instr));
            return;
        }
        Operand op = lower_expr(value);
        IrInstr instr;
        instr.kind = IrInstr::Kind::Assign;
        instr.span = span;
        instr.dest = std::move(dest);
        instr.a = std::move(op);
        instr.result_type = value.type;
        emit(std::move(instr));
    }

    void lower_stmt(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Block:
            for (const auto& child : s.stmts)
                lower_stmt(*child);
            return;
        case Stmt::Kind::Decl: {
            Place p{s.decl->var_id, s.decl->name, {}, s.decl->declared};
            if (s.decl->init) {
                assign_to(std::move(p), *s.decl->init, s.span);
            } else if (s.decl->declared->is_scalar()) {
                IrInstr instr;
                instr.kind = IrInstr::Kind::Assign;
                instr.span = s.span;
                instr.dest = std::move(p);
                instr.a = Operand::literal(BigInt(0), s.decl->declared);
                instr.result_type = s.decl->declared;
                emit(std::move(instr));
            } else {
                // Composite local without initializer: unconstrained but set.
                IrInstr instr;
                instr.kind = IrInstr::Kind::Assign;
                instr.span = s.span;
                instr.dest = std::move(p);
                instr.a = Operand::havoc(s.decl->declared);
                instr.result_type = s.decl->declared;
                emit(std::move(instr));
            }
            return;
        }
        case Stmt::Kind::Assign:
            assign_to(lower_place(*s.target), *s.value, s.span);
            return;
        case Stmt::Kind::Compound: {
            Place p = lower_place(*s.target);
            Operand a = Operand::place_ref(p);
            Operand b = lower_expr(*s.value);
            Place t = make_temp(p.type);
            IrInstr bin;
            bin.kind = IrInstr::Kind::BinOp;
            bin.span = s.span;
            bin.dest = t;
            bin.a = std::move(a);
            bin.b = std::move(b);
            bin.bin_op = s.bin_op;
            bin.result_type = p.type;
            emit(std::move(bin));
            IrInstr assign;
            assign.kind = IrInstr::Kind::Assign;
            assign.span = s.span;
            assign.dest = std::move(p);
            assign.a = Operand::place_ref(std::move(t));
            assign.result_type = assign.dest.type;
            emit(std::move(assign));
            return;
        }
        case Stmt::Kind::IncDec: {
            Place p = lower_place(*s.target);
            note_literal(BigInt(1));
            Place t = make_temp(p.type);
            IrInstr bin;
            bin.kind = IrInstr::Kind::BinOp;
            bin.span = s.span;
            bin.dest = t;
            bin.a = Operand::place_ref(p);
            bin.b = Operand::literal(BigInt(1), p.type);
            bin.bin_op = s.increment ? BinaryOp::Add : BinaryOp::Sub;
            bin.result_type = p.type;
            emit(std::move(bin));
            IrInstr assign;
            assign.kind = IrInstr::Kind::Assign;
            assign.span = s.span;
            assign.dest = std::move(p);
            assign.a = Operand::place_ref(std::move(t));
            assign.result_type = assign.dest.type;
            emit(std::move(assign));
            return;
        }
        case Stmt::Kind::If: {
            Operand cond = lower_expr(*s.cond);
            int cond_block = cur_;
            block(cond_block).branch_cond = cond;
            int join = -1;
            auto reach_join = [&]() {
                if (join < 0)
                    join = new_block();
                return join;
            };
            int then_block = new_block();
            edge(cond_block, then_block, EdgeKind::TrueBranch);
            cur_ = then_block;
            lower_stmt(*s.then_branch);
            bool then_flows = !block_ends_dead();
            int then_exit = cur_;
            if (s.else_branch) {
                int else_block = new_block();
                edge(cond_block, else_block, EdgeKind::FalseBranch);
                cur_ = else_block;
                lower_stmt(*s.else_branch);
                bool else_flows = !block_ends_dead();
                int else_exit = cur_;
                if (then_flows)
                    edge(then_exit, reach_join(), EdgeKind::Unconditional);
                if (else_flows)
                    edge(else_exit, reach_join(), EdgeKind::Unconditional);
            } else {
                if (then_flows)
                    edge(then_exit, reach_join(), EdgeKind::Unconditional);
                edge(cond_block, reach_join(), EdgeKind::FalseBranch);
            }
            cur_ = join >= 0 ? join : new_block();
            return;
        }
        case Stmt::Kind::While: {
            int header = new_block();
            edge(cur_, header, EdgeKind::Unconditional);
            cur_ = header;
            Operand cond = lower_expr(*s.cond);
            header = cur_; // expressions never split blocks; header unchanged
            block(header).branch_cond = cond;
            int body = new_block();
            int exit = new_block();
            edge(header, body, EdgeKind::TrueBranch);
            edge(header, exit, EdgeKind::FalseBranch);
            cur_ = body;
            lower_stmt(*s.body);
            if (!block_ends_dead())
                edge(cur_, header, EdgeKind::Unconditional);
            cur_ = exit;
            return;
        }
        case Stmt::Kind::For: {
            if (s.init)
                lower_stmt(*s.init);
            int header = new_block();
            edge(cur_, header, EdgeKind::Unconditional);
            cur_ = header;
            Operand cond = s.cond ? lower_expr(*s.cond)
                                  : Operand::literal(BigInt(1), MiniSolType::boolean());
            block(header).branch_cond = cond;
            int body = new_block();
            int step = new_block();
            int exit = new_block();
            edge(header, body, EdgeKind::TrueBranch);
            edge(header, exit, EdgeKind::FalseBranch);
            cur_ = body;
            lower_stmt(*s.body);
            if (!block_ends_dead())
                edge(cur_, step, EdgeKind::Unconditional);
            cur_ = step;
            if (s.step)
                lower_stmt(*s.step);
            edge(cur_, header, EdgeKind::Unconditional);
            cur_ = exit;
            return;
        }
        case Stmt::Kind::Return: {
            IrInstr instr;
            instr.kind = IrInstr::Kind::Return;
            instr.span = s.span;
            if (s.value)
                instr.returns.push_back(lower_expr(*s.value));
            emit(std::move(instr));
            seal_current();
            return;
        }
        case Stmt::Kind::Require:
        case Stmt::Kind::Assert: {
            Operand cond = lower_expr(*s.cond);
            IrInstr instr;
            instr.kind = s.kind == Stmt::Kind::Require ? IrInstr::Kind::Require
                                                       : IrInstr::Kind::Assert;
            instr.span = s.span;
            instr.a = std::move(cond);
            emit(std::move(instr));
            return;
        }
        case Stmt::Kind::Revert: {
            IrInstr instr;
            instr.kind = IrInstr::Kind::Revert;
            instr.span = s.span;
            emit(std::move(instr));
            seal_current();
            return;
        }
        case Stmt::Kind::Expr:
            lower_expr(*s.value); // side effects only (transfer/call)
            return;
        case Stmt::Kind::Placeholder:
            if (depth_ + 1 < bodies_.size()) {
                depth_++;
                lower_stmt(*bodies_[depth_]);
                depth_--;
            }
            return;
        case Stmt::Kind::TupleAssign: {
            lower_expr(*s.value); // emits the ExternalTransfer
            if (s.decl) {
                IrInstr instr;
                instr.kind = IrInstr::Kind::Assign;
                instr.span = s.span;
                instr.dest = Place{s.decl->var_id, s.decl->name, {},
                                   MiniSolType::boolean()};
                instr.a = Operand::havoc(MiniSolType::boolean());
                instr.result_type = MiniSolType::boolean();
                emit(std::move(instr));
            }
            return;
        }
        }
    }

    // True when the current block already ended in return/revert and we are
    // sitting in the fresh dead block opened by seal_current() with nothing in
    // it and no incoming edges.
    bool block_ends_dead() {
        return block(cur_).instrs.empty() && !block(cur_).branch_cond &&
               cfg_.predecessors(cur_).empty() && cur_ != cfg_.entry;
    }

    // ---- post-passes ----------------------------------------------------

    void prune_unreachable() {
        std::vector<bool> reachable(cfg_.blocks.size(), false);
        std::vector<int> stack{cfg_.entry};
        reachable[static_cast<size_t>(cfg_.entry)] = true;
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            for (int succ : cfg_.successors(node))
                if (!reachable[static_cast<size_t>(succ)]) {
                    reachable[static_cast<size_t>(succ)] = true;
                    stack.push_back(succ);
                }
        }
        std::vector<int> remap(cfg_.blocks.size(), -1);
        std::vector<BasicBlock> kept;
        for (auto& b : cfg_.blocks) {
            if (!reachable[static_cast<size_t>(b.id)])
                continue;
            remap[static_cast<size_t>(b.id)] = static_cast<int>(kept.size());
            b.id = static_cast<int>(kept.size());
            kept.push_back(std::move(b));
        }
        std::vector<CfgEdge> edges;
        for (const auto& e : cfg_.edges) {
            int from = remap[static_cast<size_t>(e.from)];
            int to = remap[static_cast<size_t>(e.to)];
            if (from >= 0 && to >= 0)
                edges.push_back(CfgEdge{from, to, e.kind});
        }
        cfg_.blocks = std::move(kept);
        cfg_.edges = std::move(edges);
        cfg_.entry = 0;
    }

    // Marks transfers whose amount is the quotient of a division, and whether
    // a matching `a % b` appears anywhere in the function (dust handling).
    void tag_quotient_transfers() {
        std::set<std::pair<std::string, std::string>> mod_pairs;
        for (const auto& b : cfg_.blocks)
            for (const auto& instr : b.instrs)
                if (instr.kind == IrInstr::Kind::BinOp && instr.bin_op == BinaryOp::Mod)
                    mod_pairs.insert({render_operand(instr.a), render_operand(instr.b)});

        // quotient provenance by place identity, propagated through copies
        std::map<std::string, std::pair<Operand, Operand>> quotient_of;
        for (auto& b : cfg_.blocks) {
            for (auto& instr : b.instrs) {
                if (instr.kind == IrInstr::Kind::BinOp) {
                    if (instr.bin_op == BinaryOp::Div)
                        quotient_of[render_place(instr.dest)] = {instr.a, instr.b};
                    else
                        quotient_of.erase(render_place(instr.dest));
                } else if (instr.kind == IrInstr::Kind::Assign) {
                    std::string dest = render_place(instr.dest);
                    if (!instr.is_array_literal &&
                        instr.a.kind == Operand::Kind::PlaceRef) {
                        auto it = quotient_of.find(render_place(*instr.a.place));
                        if (it != quotient_of.end()) {
                            quotient_of[dest] = it->second;
                            continue;
                        }
                    }
                    quotient_of.erase(dest);
                } else if (instr.kind == IrInstr::Kind::ExternalTransfer &&
                           instr.b.kind == Operand::Kind::PlaceRef) {
                    auto it = quotient_of.find(render_place(*instr.b.place));
                    if (it != quotient_of.end()) {
                        instr.amount_is_quotient = true;
                        instr.quotient_dividend = it->second.first;
                        instr.quotient_divisor = it->second.second;
                        instr.remainder_handled = mod_pairs.count(
                            {render_operand(it->second.first),
                             render_operand(it->second.second)}) > 0;
                    }
                }
            }
        }
    }
};

} // namespace

Cfg lower_function(const FunctionDecl& func, const SymbolTable& symbols,
                   const SourceFile& file) {
    FunctionLowerer lowerer(func, symbols, file);
    return lowerer.run();
}

} // namespace minisol

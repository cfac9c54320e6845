#include "minisol/resolver.hpp"

#include <cassert>

#include "minisol/error.hpp"

namespace minisol {

namespace {

[[noreturn]] void resolve_error(Span span, const std::string& msg) {
    throw FrontendError(FrontendError::Stage::Resolve, span, msg);
}
[[noreturn]] void type_error(Span span, const std::string& msg) {
    throw FrontendError(FrontendError::Stage::Type, span, msg);
}

bool fits(const BigInt& v, const TypePtr& t) {
    if (!t->is_scalar())
        return false;
    TypeDomain d = t->domain();
    return v >= d.min && v <= d.max;
}

class ContractResolver {
public:
    ContractResolver(ContractDef& contract, SymbolTable& table)
        : contract_(contract), table_(table) {}

    void run() {
        table_.contract = &contract_;
        table_.names[kMsgSenderId] = "msg.sender";
        table_.names[kMsgValueId] = "msg.value";
        for (auto& e : contract_.enums) {
            if (table_.enums.count(e->name))
                resolve_error(e->span, "duplicate enum '" + e->name + "'");
            table_.enums[e->name] = e.get();
        }
        for (auto& s : contract_.structs)
            table_.structs[s->name] = s.get();
        for (auto& s : contract_.structs)
            for (auto& f : s->fields)
                f->declared = resolve_type(f->declared, f->span);
        for (auto& v : contract_.state_vars) {
            v->declared = resolve_type(v->declared, v->span);
            if (table_.state_vars.count(v->name))
                resolve_error(v->span, "duplicate state variable '" + v->name + "'");
            table_.state_vars[v->name] = v.get();
            declare(*v);
        }
        for (auto& v : contract_.state_vars) {
            if (v->init) {
                resolve_expr(*v->init);
                check_assignable(v->declared, *v->init);
            }
        }
        for (auto& m : contract_.modifiers)
            resolve_callable(m->params, *m->body, /*in_modifier=*/true);
        for (auto& f : contract_.functions) {
            for (auto& r : f->returns)
                r = resolve_type(r, f->span);
            for (const auto& m : f->modifiers)
                if (!table_.find_modifier(m))
                    resolve_error(f->span, "unknown modifier '" + m + "'");
            current_function_ = f.get();
            resolve_callable(f->params, *f->body, /*in_modifier=*/false);
            current_function_ = nullptr;
        }
    }

private:
    ContractDef& contract_;
    SymbolTable& table_;
    std::vector<std::map<std::string, VarDecl*>> scopes_;
    FunctionDecl* current_function_ = nullptr;

    void declare(VarDecl& v) {
        v.var_id = table_.next_var_id++;
        table_.names[v.var_id] = v.name;
    }

    TypePtr resolve_type(const TypePtr& t, Span span) {
        switch (t->kind) {
        case MiniSolType::Kind::Named: {
            if (auto it = table_.enums.find(t->name); it != table_.enums.end())
                return MiniSolType::enum_t(it->second);
            if (auto it = table_.structs.find(t->name); it != table_.structs.end())
                return MiniSolType::struct_t(it->second);
            resolve_error(span, "unknown type '" + t->name + "'");
        }
        case MiniSolType::Kind::Array:
            return MiniSolType::array(resolve_type(t->elem, span), t->length);
        case MiniSolType::Kind::Mapping:
            return MiniSolType::mapping(resolve_type(t->key, span),
                                        resolve_type(t->value, span));
        default:
            return t;
        }
    }

    void resolve_callable(std::vector<std::unique_ptr<VarDecl>>& params, Stmt& body,
                          bool in_modifier) {
        scopes_.clear();
        scopes_.emplace_back();
        for (auto& p : params) {
            p->declared = resolve_type(p->declared, p->span);
            declare(*p);
            scopes_.back()[p->name] = p.get();
        }
        resolve_stmt(body, in_modifier);
        scopes_.clear();
    }

    VarDecl* lookup(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (auto f = it->find(name); f != it->end())
                return f->second;
        if (auto f = table_.state_vars.find(name); f != table_.state_vars.end())
            return f->second;
        return nullptr;
    }

    void resolve_stmt(Stmt& s, bool in_modifier) {
        switch (s.kind) {
        case Stmt::Kind::Block:
            scopes_.emplace_back();
            for (auto& inner : s.stmts)
                resolve_stmt(*inner, in_modifier);
            scopes_.pop_back();
            break;
        case Stmt::Kind::Decl:
            s.decl->declared = resolve_type(s.decl->declared, s.decl->span);
            if (s.decl->init) {
                resolve_expr(*s.decl->init);
                check_assignable(s.decl->declared, *s.decl->init);
            }
            declare(*s.decl);
            scopes_.back()[s.decl->name] = s.decl.get();
            break;
        case Stmt::Kind::Assign:
            resolve_expr(*s.target);
            require_place(*s.target);
            resolve_expr(*s.value);
            check_assignable(s.target->type, *s.value);
            break;
        case Stmt::Kind::Compound:
            resolve_expr(*s.target);
            require_place(*s.target);
            if (!s.target->type->is_numeric())
                type_error(s.span, "compound assignment requires a numeric target");
            resolve_expr(*s.value);
            check_assignable(s.target->type, *s.value);
            break;
        case Stmt::Kind::IncDec:
            resolve_expr(*s.target);
            require_place(*s.target);
            if (!s.target->type->is_numeric())
                type_error(s.span, "++/-- requires a numeric target");
            break;
        case Stmt::Kind::If:
        case Stmt::Kind::While:
            resolve_expr(*s.cond);
            require_bool(*s.cond);
            if (s.then_branch)
                resolve_stmt(*s.then_branch, in_modifier);
            if (s.else_branch)
                resolve_stmt(*s.else_branch, in_modifier);
            if (s.body)
                resolve_stmt(*s.body, in_modifier);
            break;
        case Stmt::Kind::For:
            scopes_.emplace_back();
            if (s.init)
                resolve_stmt(*s.init, in_modifier);
            if (s.cond) {
                resolve_expr(*s.cond);
                require_bool(*s.cond);
            }
            if (s.step)
                resolve_stmt(*s.step, in_modifier);
            resolve_stmt(*s.body, in_modifier);
            scopes_.pop_back();
            break;
        case Stmt::Kind::Return:
            if (s.value) {
                resolve_expr(*s.value);
                if (current_function_ && !current_function_->returns.empty())
                    check_assignable(current_function_->returns[0], *s.value);
            }
            break;
        case Stmt::Kind::Require:
        case Stmt::Kind::Assert:
            resolve_expr(*s.cond);
            require_bool(*s.cond);
            break;
        case Stmt::Kind::Revert:
            break;
        case Stmt::Kind::Expr:
            resolve_expr(*s.value);
            if (s.value->kind != Expr::Kind::Call)
                type_error(s.span, "expression statement has no effect");
            break;
        case Stmt::Kind::Placeholder:
            if (!in_modifier)
                resolve_error(s.span, "'_' placeholder is only valid inside a modifier");
            break;
        case Stmt::Kind::TupleAssign: {
            resolve_expr(*s.value);
            const Expr& call = *s.value;
            bool is_low_level_call =
                call.kind == Expr::Kind::Call && call.callee &&
                call.callee->kind == Expr::Kind::Member && call.callee->name == "call";
            if (!is_low_level_call)
                type_error(s.span, "tuple assignment is only supported for .call{value:}");
            declare(*s.decl);
            scopes_.back()[s.decl->name] = s.decl.get();
            break;
        }
        }
    }

    void require_bool(const Expr& e) {
        if (e.type->kind != MiniSolType::Kind::Bool)
            type_error(e.span, "expected a boolean expression");
    }

    void require_place(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::Ident:
            if (e.decl)
                return;
            break;
        case Expr::Kind::Index:
            return;
        case Expr::Kind::Member:
            if (e.builtin == Builtin::None && e.lhs && e.lhs->type &&
                e.lhs->type->kind == MiniSolType::Kind::Struct)
                return;
            break;
        default:
            break;
        }
        type_error(e.span, "expression is not assignable");
    }

    void adapt_literal(Expr& e, const TypePtr& target) {
        if (e.kind != Expr::Kind::IntLit || !target || !target->is_numeric())
            return;
        if (!fits(e.int_value, target))
            type_error(e.span, "literal out of range for " + target->to_string());
        e.type = target;
    }

    void check_assignable(const TypePtr& target, Expr& value) {
        if (value.kind == Expr::Kind::IntLit && target->is_numeric()) {
            adapt_literal(value, target);
            return;
        }
        if (value.kind == Expr::Kind::ArrayLit) {
            if (target->kind != MiniSolType::Kind::Array)
                type_error(value.span, "array literal assigned to non-array");
            if (target->length && *target->length != value.args.size())
                type_error(value.span, "array literal length mismatch");
            for (auto& el : value.args)
                check_assignable(target->elem, *el);
            value.type = MiniSolType::array(target->elem, value.args.size());
            return;
        }
        const TypePtr& src = value.type;
        if (target->is_numeric() && src->is_numeric()) {
            if (target->is_unsigned() != src->is_unsigned())
                type_error(value.span, "cannot mix signed and unsigned values");
            if (src->bits > target->bits)
                type_error(value.span, "implicit narrowing from " + src->to_string() +
                                           " to " + target->to_string());
            return;
        }
        if (same_type(target, src))
            return;
        type_error(value.span, "cannot assign " + src->to_string() + " to " +
                                   target->to_string());
    }

    void resolve_expr(Expr& e) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            e.type = MiniSolType::uint_t(256);
            break;
        case Expr::Kind::BoolLit:
            e.type = MiniSolType::boolean();
            break;
        case Expr::Kind::StringLit:
            e.type = MiniSolType::named("string");
            break;
        case Expr::Kind::ArrayLit:
            for (auto& el : e.args)
                resolve_expr(*el);
            // full type fixed by the assignment context (check_assignable)
            e.type = MiniSolType::array(e.args.empty() ? MiniSolType::uint_t(256)
                                                       : e.args[0]->type,
                                        e.args.size());
            break;
        case Expr::Kind::Ident: {
            if (e.name == "msg")
                resolve_error(e.span, "'msg' can only be used as msg.sender or msg.value");
            VarDecl* decl = lookup(e.name);
            if (!decl)
                resolve_error(e.span, "unknown identifier '" + e.name + "'");
            e.decl = decl;
            e.type = decl->declared;
            break;
        }
        case Expr::Kind::Member:
            resolve_member(e);
            break;
        case Expr::Kind::Index: {
            resolve_expr(*e.lhs);
            resolve_expr(*e.rhs);
            const TypePtr& base = e.lhs->type;
            if (base->kind == MiniSolType::Kind::Array) {
                if (!e.rhs->type->is_unsigned() && e.rhs->kind != Expr::Kind::IntLit)
                    type_error(e.rhs->span, "array index must be unsigned");
                adapt_literal(*e.rhs, MiniSolType::uint_t(256));
                e.type = base->elem;
            } else if (base->kind == MiniSolType::Kind::Mapping) {
                check_assignable(base->key, *e.rhs);
                e.type = base->value;
            } else {
                type_error(e.span, "cannot index a " + base->to_string());
            }
            break;
        }
        case Expr::Kind::Call:
            resolve_call(e);
            break;
        case Expr::Kind::Binary:
            resolve_binary(e);
            break;
        case Expr::Kind::Unary:
            resolve_expr(*e.lhs);
            if (e.un_op == UnaryOp::Not) {
                require_bool(*e.lhs);
                e.type = MiniSolType::boolean();
            } else {
                if (e.lhs->kind == Expr::Kind::IntLit) {
                    e.lhs->type = MiniSolType::int_t(256);
                } else if (e.lhs->type->kind != MiniSolType::Kind::Int) {
                    type_error(e.span, "unary minus requires a signed operand");
                }
                e.type = e.lhs->type;
            }
            break;
        }
        assert(e.type && "expression left untyped");
    }

    void resolve_member(Expr& e) {
        // msg.sender / msg.value
        if (e.lhs->kind == Expr::Kind::Ident && e.lhs->name == "msg") {
            e.lhs->type = MiniSolType::named("msg");
            if (e.name == "sender") {
                e.builtin = Builtin::MsgSender;
                e.type = MiniSolType::address();
                return;
            }
            if (e.name == "value") {
                e.builtin = Builtin::MsgValue;
                e.type = MiniSolType::uint_t(256);
                return;
            }
            resolve_error(e.span, "unknown builtin msg." + e.name);
        }
        // Enum constant: EnumName.Variant
        if (e.lhs->kind == Expr::Kind::Ident) {
            if (auto it = table_.enums.find(e.lhs->name); it != table_.enums.end()) {
                const EnumDecl* decl = it->second;
                for (size_t i = 0; i < decl->variants.size(); i++) {
                    if (decl->variants[i] == e.name) {
                        e.lhs->type = MiniSolType::named(decl->name);
                        e.kind = Expr::Kind::IntLit;
                        e.int_value = BigInt(i);
                        e.type = MiniSolType::enum_t(decl);
                        return;
                    }
                }
                resolve_error(e.span, "enum " + decl->name + " has no variant '" +
                                          e.name + "'");
            }
        }
        resolve_expr(*e.lhs);
        const TypePtr& base = e.lhs->type;
        if (e.name == "length" && base->kind == MiniSolType::Kind::Array) {
            e.builtin = Builtin::ArrayLength;
            e.type = MiniSolType::uint_t(256);
            return;
        }
        if ((e.name == "transfer" || e.name == "call") &&
            base->kind == MiniSolType::Kind::Address) {
            // Typed by the enclosing call expression.
            e.type = MiniSolType::boolean();
            return;
        }
        if (base->kind == MiniSolType::Kind::Struct) {
            for (const auto& f : base->struct_decl->fields) {
                if (f->name == e.name) {
                    e.type = f->declared;
                    return;
                }
            }
            resolve_error(e.span, "struct " + base->struct_decl->name +
                                      " has no field '" + e.name + "'");
        }
        resolve_error(e.span, "unknown member '." + e.name + "'");
    }

    void resolve_call(Expr& e) {
        if (e.callee->kind == Expr::Kind::Ident) {
            const std::string& name = e.callee->name;
            if (name == "payable") {
                if (e.args.size() != 1)
                    type_error(e.span, "payable() takes one argument");
                resolve_expr(*e.args[0]);
                if (e.args[0]->type->kind != MiniSolType::Kind::Address)
                    type_error(e.args[0]->span, "payable() requires an address");
                e.callee->type = MiniSolType::named("payable");
                e.is_payable_cast = true;
                e.type = MiniSolType::address();
                return;
            }
            if (auto it = table_.enums.find(name); it != table_.enums.end()) {
                if (e.args.size() != 1)
                    type_error(e.span, "enum cast takes one argument");
                resolve_expr(*e.args[0]);
                adapt_literal(*e.args[0], MiniSolType::uint_t(256));
                if (!e.args[0]->type->is_unsigned())
                    type_error(e.args[0]->span, "enum cast requires an unsigned value");
                e.callee->type = MiniSolType::named(name);
                e.cast_enum = it->second;
                e.type = MiniSolType::enum_t(it->second);
                return;
            }
            resolve_error(e.span, "unsupported construct: call to '" + name +
                                      "' (user-defined function calls are not supported)");
        }
        if (e.callee->kind == Expr::Kind::Member) {
            resolve_expr(*e.callee);
            const std::string& name = e.callee->name;
            if (name == "transfer") {
                if (e.args.size() != 1)
                    type_error(e.span, ".transfer() takes one amount argument");
                resolve_expr(*e.args[0]);
                adapt_literal(*e.args[0], MiniSolType::uint_t(256));
                if (!e.args[0]->type->is_unsigned())
                    type_error(e.args[0]->span, ".transfer() amount must be unsigned");
                e.type = MiniSolType::boolean();
                return;
            }
            if (name == "call") {
                if (!e.call_value)
                    type_error(e.span, ".call requires a {value: ...} option here");
                resolve_expr(*e.call_value);
                adapt_literal(*e.call_value, MiniSolType::uint_t(256));
                for (auto& a : e.args)
                    resolve_expr(*a);
                e.type = MiniSolType::boolean();
                return;
            }
        }
        resolve_error(e.span, "unsupported construct: function call");
    }

    void resolve_binary(Expr& e) {
        resolve_expr(*e.lhs);
        resolve_expr(*e.rhs);
        Expr& l = *e.lhs;
        Expr& r = *e.rhs;
        if (is_logical(e.bin_op)) {
            require_bool(l);
            require_bool(r);
            e.type = MiniSolType::boolean();
            return;
        }
        // Contextual typing for bare literals.
        if (l.kind == Expr::Kind::IntLit && r.kind != Expr::Kind::IntLit &&
            r.type->is_numeric())
            adapt_literal(l, r.type);
        if (r.kind == Expr::Kind::IntLit && l.kind != Expr::Kind::IntLit &&
            l.type->is_numeric())
            adapt_literal(r, l.type);
        if (is_arith(e.bin_op)) {
            if (!l.type->is_numeric() || !r.type->is_numeric())
                type_error(e.span, "arithmetic requires numeric operands (got " +
                                       l.type->to_string() + " and " +
                                       r.type->to_string() + ")");
            if (l.type->is_unsigned() != r.type->is_unsigned())
                type_error(e.span, "cannot mix signed and unsigned operands");
            e.type = l.type->bits >= r.type->bits ? l.type : r.type;
            return;
        }
        // Comparison.
        auto comparable = [&]() -> bool {
            if (l.type->is_numeric() && r.type->is_numeric())
                return l.type->is_unsigned() == r.type->is_unsigned();
            if (l.type->kind != r.type->kind)
                return false;
            switch (l.type->kind) {
            case MiniSolType::Kind::Address:
                return true;
            case MiniSolType::Kind::Bool:
            case MiniSolType::Kind::Enum:
                return (e.bin_op == BinaryOp::Eq || e.bin_op == BinaryOp::Ne) &&
                       same_type(l.type, r.type);
            default:
                return false;
            }
        };
        // A literal compared against a uint-typed expression: `x < 0` must
        // type-check even though 0 already fits.
        if (!comparable())
            type_error(e.span, "cannot compare " + l.type->to_string() + " with " +
                                   r.type->to_string());
        e.type = MiniSolType::boolean();
    }
};

} // namespace

const ModifierDecl* SymbolTable::find_modifier(const std::string& name) const {
    for (const auto& m : contract->modifiers)
        if (m->name == name)
            return m.get();
    return nullptr;
}

ResolveResult resolve(SourceUnit& unit) {
    ResolveResult result;
    for (auto& c : unit.contracts) {
        SymbolTable& table = result.tables[c.get()];
        ContractResolver(*c, table).run();
    }
    return result;
}

} // namespace minisol

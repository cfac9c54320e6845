#include "minisol/parser.hpp"

#include <charconv>

#include "minisol/error.hpp"

namespace minisol {

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    SourceUnit parse_unit() {
        SourceUnit unit;
        while (!at_end()) {
            if (peek().is_keyword("pragma")) {
                skip_until_semicolon();
                continue;
            }
            if (peek().is_keyword("import") || peek().is_keyword("interface") ||
                peek().is_keyword("library") || peek().is_keyword("using"))
                unsupported(peek());
            unit.contracts.push_back(parse_contract());
        }
        return unit;
    }

private:
    const std::vector<Token>& toks_;
    size_t pos_ = 0;

    const Token& peek(size_t off = 0) const {
        size_t i = pos_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().is(TokenKind::EndOfFile); }

    [[noreturn]] void error(const Token& at, const std::string& msg) {
        throw FrontendError(FrontendError::Stage::Parse, at.span, msg);
    }
    [[noreturn]] void unsupported(const Token& at) {
        error(at, "unsupported construct: '" + at.lexeme + "' is outside the MiniSol subset");
    }

    const Token& expect_punct(std::string_view p) {
        if (!peek().is_punct(p))
            error(peek(), std::string("expected '") + std::string(p) + "', found '" +
                              peek().lexeme + "'");
        return advance();
    }
    const Token& expect_keyword(std::string_view kw) {
        if (!peek().is_keyword(kw))
            error(peek(), std::string("expected '") + std::string(kw) + "', found '" +
                              peek().lexeme + "'");
        return advance();
    }
    const Token& expect_ident() {
        if (!peek().is(TokenKind::Identifier))
            error(peek(), "expected identifier, found '" + peek().lexeme + "'");
        return advance();
    }
    bool accept_punct(std::string_view p) {
        if (peek().is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_keyword(std::string_view kw) {
        if (peek().is_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }

    void skip_until_semicolon() {
        while (!at_end() && !peek().is_punct(";"))
            advance();
        if (!at_end())
            advance();
    }

    // ---- declarations ----

    std::unique_ptr<ContractDef> parse_contract() {
        const Token& kw = expect_keyword("contract");
        auto contract = std::make_unique<ContractDef>();
        contract->name = expect_ident().lexeme;
        if (peek().is_keyword("is"))
            unsupported(peek());
        expect_punct("{");
        while (!peek().is_punct("}")) {
            if (at_end())
                error(peek(), "unterminated contract body");
            parse_contract_member(*contract);
        }
        const Token& close = expect_punct("}");
        contract->span = Span{kw.span.begin, close.span.end};
        return contract;
    }

    void parse_contract_member(ContractDef& contract) {
        const Token& t = peek();
        if (t.is_keyword("enum")) {
            contract.enums.push_back(parse_enum());
        } else if (t.is_keyword("struct")) {
            contract.structs.push_back(parse_struct());
        } else if (t.is_keyword("function") || t.is_keyword("constructor")) {
            contract.functions.push_back(parse_function());
        } else if (t.is_keyword("modifier")) {
            contract.modifiers.push_back(parse_modifier());
        } else if (t.is_keyword("event") || t.is_keyword("emit")) {
            unsupported(t);
        } else {
            contract.state_vars.push_back(parse_state_var());
        }
    }

    std::unique_ptr<EnumDecl> parse_enum() {
        const Token& kw = expect_keyword("enum");
        auto decl = std::make_unique<EnumDecl>();
        decl->name = expect_ident().lexeme;
        expect_punct("{");
        decl->variants.push_back(expect_ident().lexeme);
        while (accept_punct(","))
            decl->variants.push_back(expect_ident().lexeme);
        const Token& close = expect_punct("}");
        decl->span = Span{kw.span.begin, close.span.end};
        return decl;
    }

    std::unique_ptr<StructDecl> parse_struct() {
        const Token& kw = expect_keyword("struct");
        auto decl = std::make_unique<StructDecl>();
        decl->name = expect_ident().lexeme;
        expect_punct("{");
        while (!peek().is_punct("}")) {
            auto field = std::make_unique<VarDecl>();
            Span begin = peek().span;
            field->declared = parse_type();
            field->name = expect_ident().lexeme;
            field->span = Span{begin.begin, expect_punct(";").span.end};
            decl->fields.push_back(std::move(field));
        }
        const Token& close = expect_punct("}");
        decl->span = Span{kw.span.begin, close.span.end};
        return decl;
    }

    std::unique_ptr<VarDecl> parse_state_var() {
        auto decl = std::make_unique<VarDecl>();
        Span begin = peek().span;
        decl->declared = parse_type();
        decl->is_state = true;
        while (true) {
            if (accept_keyword("public")) {
                decl->vis = Visibility::Public;
            } else if (accept_keyword("private")) {
                decl->vis = Visibility::Private;
            } else if (accept_keyword("internal")) {
                decl->vis = Visibility::Internal;
            } else if (peek().is_keyword("immutable") || peek().is_keyword("constant")) {
                unsupported(peek());
            } else {
                break;
            }
        }
        decl->name = expect_ident().lexeme;
        if (accept_punct("="))
            decl->init = parse_expr();
        decl->span = Span{begin.begin, expect_punct(";").span.end};
        return decl;
    }

    std::unique_ptr<FunctionDecl> parse_function() {
        auto fn = std::make_unique<FunctionDecl>();
        Span begin = peek().span;
        if (accept_keyword("constructor")) {
            fn->is_constructor = true;
            fn->name = "constructor";
        } else {
            expect_keyword("function");
            fn->name = expect_ident().lexeme;
        }
        fn->params = parse_params();
        // Attribute list: visibility, mutability, modifier invocations.
        while (true) {
            const Token& t = peek();
            if (t.is_keyword("public")) {
                fn->vis = Visibility::Public;
                advance();
            } else if (t.is_keyword("private")) {
                fn->vis = Visibility::Private;
                advance();
            } else if (t.is_keyword("internal")) {
                fn->vis = Visibility::Internal;
                advance();
            } else if (t.is_keyword("external")) {
                fn->vis = Visibility::External;
                advance();
            } else if (t.is_keyword("pure")) {
                fn->mut = Mutability::Pure;
                advance();
            } else if (t.is_keyword("view")) {
                fn->mut = Mutability::View;
                advance();
            } else if (t.is_keyword("payable")) {
                fn->mut = Mutability::Payable;
                advance();
            } else if (t.is(TokenKind::Identifier)) {
                fn->modifiers.push_back(advance().lexeme);
                if (accept_punct("(")) // argument-less invocation parentheses
                    expect_punct(")");
            } else {
                break;
            }
        }
        if (accept_keyword("returns")) {
            expect_punct("(");
            fn->returns.push_back(parse_type());
            accept_keyword("memory") || accept_keyword("calldata");
            while (accept_punct(",")) {
                fn->returns.push_back(parse_type());
                accept_keyword("memory") || accept_keyword("calldata");
            }
            expect_punct(")");
        }
        fn->body = parse_block();
        fn->span = Span{begin.begin, fn->body->span.end};
        return fn;
    }

    std::unique_ptr<ModifierDecl> parse_modifier() {
        const Token& kw = expect_keyword("modifier");
        auto mod = std::make_unique<ModifierDecl>();
        mod->name = expect_ident().lexeme;
        if (peek().is_punct("("))
            mod->params = parse_params();
        mod->body = parse_block();
        mod->span = Span{kw.span.begin, mod->body->span.end};
        return mod;
    }

    std::vector<std::unique_ptr<VarDecl>> parse_params() {
        std::vector<std::unique_ptr<VarDecl>> params;
        expect_punct("(");
        if (!peek().is_punct(")")) {
            do {
                auto p = std::make_unique<VarDecl>();
                Span begin = peek().span;
                p->declared = parse_type();
                accept_keyword("memory") || accept_keyword("storage") ||
                    accept_keyword("calldata");
                p->is_param = true;
                const Token& name = expect_ident();
                p->name = name.lexeme;
                p->span = Span{begin.begin, name.span.end};
                params.push_back(std::move(p));
            } while (accept_punct(","));
        }
        expect_punct(")");
        return params;
    }

    // ---- types ----

    TypePtr parse_type() {
        TypePtr base = parse_base_type();
        while (peek().is_punct("[")) {
            advance();
            std::optional<uint64_t> len;
            if (peek().is(TokenKind::IntegerLiteral)) {
                uint64_t v = 0;
                auto& lex = peek().lexeme;
                std::from_chars(lex.data(), lex.data() + lex.size(), v);
                advance();
                len = v;
            }
            expect_punct("]");
            base = MiniSolType::array(base, len);
        }
        return base;
    }

    TypePtr parse_base_type() {
        const Token& t = peek();
        if (t.is(TokenKind::Keyword)) {
            const std::string& kw = t.lexeme;
            if (kw == "bool") {
                advance();
                return MiniSolType::boolean();
            }
            if (kw == "address") {
                advance();
                accept_keyword("payable");
                return MiniSolType::address();
            }
            if (kw.rfind("uint", 0) == 0) {
                advance();
                return MiniSolType::uint_t(kw == "uint" ? 256 : std::stoi(kw.substr(4)));
            }
            if (kw.rfind("int", 0) == 0) {
                advance();
                return MiniSolType::int_t(kw == "int" ? 256 : std::stoi(kw.substr(3)));
            }
            if (kw == "mapping") {
                advance();
                expect_punct("(");
                TypePtr key = parse_type();
                expect_punct("=");
                expect_punct(">");
                TypePtr value = parse_type();
                expect_punct(")");
                return MiniSolType::mapping(key, value);
            }
            unsupported(t);
        }
        if (t.is(TokenKind::Identifier)) {
            advance();
            return MiniSolType::named(t.lexeme);
        }
        error(t, "expected type, found '" + t.lexeme + "'");
    }

    // ---- statements ----

    StmtPtr parse_block() {
        const Token& open = expect_punct("{");
        auto block = std::make_unique<Stmt>();
        block->kind = Stmt::Kind::Block;
        while (!peek().is_punct("}")) {
            if (at_end())
                error(peek(), "unterminated block");
            block->stmts.push_back(parse_statement());
        }
        const Token& close = expect_punct("}");
        block->span = Span{open.span.begin, close.span.end};
        return block;
    }

    StmtPtr parse_statement() {
        const Token& t = peek();
        if (t.is_punct("{"))
            return parse_block();
        if (t.is_keyword("if"))
            return parse_if();
        if (t.is_keyword("while"))
            return parse_while();
        if (t.is_keyword("for"))
            return parse_for();
        if (t.is_keyword("return")) {
            auto s = make_stmt(Stmt::Kind::Return, t.span);
            advance();
            if (!peek().is_punct(";"))
                s->value = parse_expr();
            s->span.end = expect_punct(";").span.end;
            return s;
        }
        if (t.is_keyword("require") || t.is_keyword("assert")) {
            bool is_require = t.is_keyword("require");
            auto s = make_stmt(is_require ? Stmt::Kind::Require : Stmt::Kind::Assert, t.span);
            advance();
            expect_punct("(");
            s->cond = parse_expr();
            if (accept_punct(","))
                s->message = string_content(advance());
            expect_punct(")");
            s->span.end = expect_punct(";").span.end;
            return s;
        }
        if (t.is_keyword("revert")) {
            auto s = make_stmt(Stmt::Kind::Revert, t.span);
            advance();
            if (accept_punct("(")) {
                if (peek().is(TokenKind::StringLiteral))
                    s->message = string_content(advance());
                expect_punct(")");
            }
            s->span.end = expect_punct(";").span.end;
            return s;
        }
        if (t.is(TokenKind::Identifier) && t.lexeme == "_" && peek(1).is_punct(";")) {
            auto s = make_stmt(Stmt::Kind::Placeholder, t.span);
            advance();
            s->span.end = expect_punct(";").span.end;
            return s;
        }
        if (t.is_punct("(") && peek(1).is_keyword("bool"))
            return parse_tuple_assign();
        if (t.is_keyword("emit") || t.is_keyword("event"))
            unsupported(t);
        return parse_simple_statement(/*require_semi=*/true);
    }

    StmtPtr parse_if() {
        const Token& kw = expect_keyword("if");
        auto s = make_stmt(Stmt::Kind::If, kw.span);
        expect_punct("(");
        s->cond = parse_expr();
        expect_punct(")");
        s->then_branch = parse_statement();
        s->span.end = s->then_branch->span.end;
        if (accept_keyword("else")) {
            s->else_branch = parse_statement();
            s->span.end = s->else_branch->span.end;
        }
        return s;
    }

    StmtPtr parse_while() {
        const Token& kw = expect_keyword("while");
        auto s = make_stmt(Stmt::Kind::While, kw.span);
        expect_punct("(");
        s->cond = parse_expr();
        expect_punct(")");
        s->body = parse_statement();
        s->span.end = s->body->span.end;
        return s;
    }

    StmtPtr parse_for() {
        const Token& kw = expect_keyword("for");
        auto s = make_stmt(Stmt::Kind::For, kw.span);
        expect_punct("(");
        if (!peek().is_punct(";")) {
            s->init = parse_simple_statement(/*require_semi=*/false);
        }
        expect_punct(";");
        if (!peek().is_punct(";"))
            s->cond = parse_expr();
        expect_punct(";");
        if (!peek().is_punct(")"))
            s->step = parse_simple_statement(/*require_semi=*/false);
        expect_punct(")");
        s->body = parse_statement();
        s->span.end = s->body->span.end;
        return s;
    }

    // `(bool ok,) = <expr>;`
    StmtPtr parse_tuple_assign() {
        const Token& open = expect_punct("(");
        auto s = make_stmt(Stmt::Kind::TupleAssign, open.span);
        expect_keyword("bool");
        auto binding = std::make_unique<VarDecl>();
        const Token& name = expect_ident();
        binding->name = name.lexeme;
        binding->declared = MiniSolType::boolean();
        binding->span = name.span;
        s->decl = std::move(binding);
        accept_punct(",");
        expect_punct(")");
        expect_punct("=");
        s->value = parse_expr();
        s->span.end = expect_punct(";").span.end;
        return s;
    }

    // Declaration, assignment, compound assignment, inc/dec, or a bare
    // expression. Used for ordinary statements and for `for` init/step.
    StmtPtr parse_simple_statement(bool require_semi) {
        Span begin = peek().span;
        if (starts_declaration()) {
            auto s = make_stmt(Stmt::Kind::Decl, begin);
            auto decl = std::make_unique<VarDecl>();
            decl->declared = parse_type();
            accept_keyword("memory") || accept_keyword("storage") ||
                accept_keyword("calldata");
            decl->name = expect_ident().lexeme;
            if (accept_punct("="))
                decl->init = parse_expr();
            decl->span = Span{begin.begin, peek().span.begin};
            s->decl = std::move(decl);
            finish_simple(*s, require_semi);
            return s;
        }
        if (peek().is_punct("++") || peek().is_punct("--")) {
            auto s = make_stmt(Stmt::Kind::IncDec, begin);
            s->increment = advance().lexeme == "++";
            s->target = parse_expr_no_incdec();
            finish_simple(*s, require_semi);
            return s;
        }
        ExprPtr e = parse_expr_no_incdec();
        if (peek().is_punct("++") || peek().is_punct("--")) {
            auto s = make_stmt(Stmt::Kind::IncDec, begin);
            s->increment = advance().lexeme == "++";
            s->target = std::move(e);
            finish_simple(*s, require_semi);
            return s;
        }
        if (peek().is_punct("=")) {
            advance();
            auto s = make_stmt(Stmt::Kind::Assign, begin);
            s->target = std::move(e);
            s->value = parse_expr();
            finish_simple(*s, require_semi);
            return s;
        }
        static const std::pair<const char*, BinaryOp> compound[] = {
            {"+=", BinaryOp::Add}, {"-=", BinaryOp::Sub}, {"*=", BinaryOp::Mul},
            {"/=", BinaryOp::Div}, {"%=", BinaryOp::Mod}};
        for (auto& [text, op] : compound) {
            if (peek().is_punct(text)) {
                advance();
                auto s = make_stmt(Stmt::Kind::Compound, begin);
                s->bin_op = op;
                s->target = std::move(e);
                s->value = parse_expr();
                finish_simple(*s, require_semi);
                return s;
            }
        }
        auto s = make_stmt(Stmt::Kind::Expr, begin);
        s->value = std::move(e);
        finish_simple(*s, require_semi);
        return s;
    }

    void finish_simple(Stmt& s, bool require_semi) {
        if (require_semi)
            s.span.end = expect_punct(";").span.end;
        else
            s.span.end = peek().span.begin;
    }

    // A statement starts a declaration if it begins with a type keyword, or
    // with `Ident Ident` / `Ident [ ] Ident` (a named type).
    bool starts_declaration() {
        const Token& t = peek();
        if (t.is(TokenKind::Keyword)) {
            const std::string& kw = t.lexeme;
            return kw == "bool" || kw == "address" || kw == "mapping" ||
                   kw.rfind("uint", 0) == 0 || kw.rfind("int", 0) == 0;
        }
        if (!t.is(TokenKind::Identifier))
            return false;
        size_t off = 1;
        while (peek(off).is_punct("[")) {
            size_t depth = 1;
            off++;
            while (depth > 0 && !peek(off).is(TokenKind::EndOfFile)) {
                if (peek(off).is_punct("["))
                    depth++;
                else if (peek(off).is_punct("]"))
                    depth--;
                off++;
            }
        }
        if (peek(off).is(TokenKind::Keyword)) {
            const std::string& kw = peek(off).lexeme;
            if (kw == "memory" || kw == "storage" || kw == "calldata")
                off++;
        }
        return peek(off).is(TokenKind::Identifier);
    }

    // ---- expressions ----

    std::string string_content(const Token& t) {
        if (!t.is(TokenKind::StringLiteral))
            error(t, "expected string literal, found '" + t.lexeme + "'");
        return t.lexeme.substr(1, t.lexeme.size() - 2);
    }

    ExprPtr parse_expr() { return parse_or(); }
    // Same as parse_expr; named for call sites where a trailing ++/-- is
    // consumed by the statement parser.
    ExprPtr parse_expr_no_incdec() { return parse_or(); }

    ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Binary;
        e->bin_op = op;
        e->span = Span{lhs->span.begin, rhs->span.end};
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        return e;
    }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (peek().is_punct("||")) {
            advance();
            e = make_binary(BinaryOp::Or, std::move(e), parse_and());
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_equality();
        while (peek().is_punct("&&")) {
            advance();
            e = make_binary(BinaryOp::And, std::move(e), parse_equality());
        }
        return e;
    }

    ExprPtr parse_equality() {
        ExprPtr e = parse_relational();
        while (peek().is_punct("==") || peek().is_punct("!=")) {
            BinaryOp op = advance().lexeme == "==" ? BinaryOp::Eq : BinaryOp::Ne;
            e = make_binary(op, std::move(e), parse_relational());
        }
        return e;
    }

    ExprPtr parse_relational() {
        ExprPtr e = parse_additive();
        while (true) {
            BinaryOp op;
            if (peek().is_punct("<"))
                op = BinaryOp::Lt;
            else if (peek().is_punct("<="))
                op = BinaryOp::Le;
            else if (peek().is_punct(">"))
                op = BinaryOp::Gt;
            else if (peek().is_punct(">="))
                op = BinaryOp::Ge;
            else
                break;
            advance();
            e = make_binary(op, std::move(e), parse_additive());
        }
        return e;
    }

    ExprPtr parse_additive() {
        ExprPtr e = parse_multiplicative();
        while (peek().is_punct("+") || peek().is_punct("-")) {
            BinaryOp op = advance().lexeme == "+" ? BinaryOp::Add : BinaryOp::Sub;
            e = make_binary(op, std::move(e), parse_multiplicative());
        }
        return e;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr e = parse_unary();
        while (peek().is_punct("*") || peek().is_punct("/") || peek().is_punct("%")) {
            const std::string& p = advance().lexeme;
            BinaryOp op = p == "*" ? BinaryOp::Mul : (p == "/" ? BinaryOp::Div : BinaryOp::Mod);
            e = make_binary(op, std::move(e), parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        const Token& t = peek();
        if (t.is_punct("!") || t.is_punct("-")) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Unary;
            e->un_op = t.is_punct("!") ? UnaryOp::Not : UnaryOp::Neg;
            e->lhs = parse_unary();
            e->span = Span{t.span.begin, e->lhs->span.end};
            return e;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (peek().is_punct(".")) {
                advance();
                auto m = std::make_unique<Expr>();
                m->kind = Expr::Kind::Member;
                const Token& name = expect_ident();
                m->name = name.lexeme;
                m->span = Span{e->span.begin, name.span.end};
                m->lhs = std::move(e);
                e = std::move(m);
            } else if (peek().is_punct("[")) {
                advance();
                auto ix = std::make_unique<Expr>();
                ix->kind = Expr::Kind::Index;
                ix->rhs = parse_expr();
                const Token& close = expect_punct("]");
                ix->span = Span{e->span.begin, close.span.end};
                ix->lhs = std::move(e);
                e = std::move(ix);
            } else if (peek().is_punct("{") || peek().is_punct("(")) {
                auto call = std::make_unique<Expr>();
                call->kind = Expr::Kind::Call;
                if (accept_punct("{")) {
                    // `.call{value: e}` option block
                    const Token& opt = expect_ident();
                    if (opt.lexeme != "value")
                        error(opt, "unsupported call option '" + opt.lexeme + "'");
                    expect_punct(":");
                    call->call_value = parse_expr();
                    expect_punct("}");
                }
                expect_punct("(");
                if (!peek().is_punct(")")) {
                    call->args.push_back(parse_expr());
                    while (accept_punct(","))
                        call->args.push_back(parse_expr());
                }
                const Token& close = expect_punct(")");
                call->span = Span{e->span.begin, close.span.end};
                call->callee = std::move(e);
                e = std::move(call);
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        if (t.is(TokenKind::IntegerLiteral)) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::IntLit;
            e->span = t.span;
            std::string digits;
            for (char c : t.lexeme)
                if (c != '_')
                    digits += c;
            e->int_value = BigInt(digits);
            return e;
        }
        if (t.is(TokenKind::StringLiteral)) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::StringLit;
            e->span = t.span;
            e->name = t.lexeme.substr(1, t.lexeme.size() - 2);
            return e;
        }
        if (t.is_keyword("true") || t.is_keyword("false")) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::BoolLit;
            e->span = t.span;
            e->bool_value = t.lexeme == "true";
            return e;
        }
        if (t.is_keyword("payable")) {
            // `payable(expr)` cast; treated as a call to the builtin name.
            advance();
            auto callee = std::make_unique<Expr>();
            callee->kind = Expr::Kind::Ident;
            callee->span = t.span;
            callee->name = "payable";
            auto call = std::make_unique<Expr>();
            call->kind = Expr::Kind::Call;
            expect_punct("(");
            call->args.push_back(parse_expr());
            const Token& close = expect_punct(")");
            call->span = Span{t.span.begin, close.span.end};
            call->callee = std::move(callee);
            return call;
        }
        if (t.is(TokenKind::Identifier)) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Ident;
            e->span = t.span;
            e->name = t.lexeme;
            return e;
        }
        if (t.is_punct("(")) {
            advance();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.is_punct("[")) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Kind::ArrayLit;
            if (!peek().is_punct("]")) {
                e->args.push_back(parse_expr());
                while (accept_punct(","))
                    e->args.push_back(parse_expr());
            }
            const Token& close = expect_punct("]");
            e->span = Span{t.span.begin, close.span.end};
            return e;
        }
        error(t, "expected expression, found '" + t.lexeme + "'");
    }

    StmtPtr make_stmt(Stmt::Kind kind, Span span) {
        auto s = std::make_unique<Stmt>();
        s->kind = kind;
        s->span = span;
        return s;
    }
};

} // namespace

SourceUnit parse(const std::vector<Token>& tokens) {
    Parser p(tokens);
    return p.parse_unit();
}

} // namespace minisol

#include "minisol/printer.hpp"

#include <sstream>

namespace minisol {

namespace {

class Printer {
public:
    std::string run(const SourceUnit& unit) {
        for (const auto& c : unit.contracts)
            print_contract(*c);
        return out_.str();
    }

    std::string str() const { return out_.str(); }

    void expr(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::IntLit:
            out_ << e.int_value;
            break;
        case Expr::Kind::BoolLit:
            out_ << (e.bool_value ? "true" : "false");
            break;
        case Expr::Kind::StringLit:
            out_ << '"' << e.name << '"';
            break;
        case Expr::Kind::Ident:
            out_ << e.name;
            break;
        case Expr::Kind::Member:
            expr(*e.lhs);
            out_ << '.' << e.name;
            break;
        case Expr::Kind::Index:
            expr(*e.lhs);
            out_ << '[';
            expr(*e.rhs);
            out_ << ']';
            break;
        case Expr::Kind::Call:
            expr(*e.callee);
            if (e.call_value) {
                out_ << "{value: ";
                expr(*e.call_value);
                out_ << '}';
            }
            out_ << '(';
            for (size_t i = 0; i < e.args.size(); i++) {
                if (i)
                    out_ << ", ";
                expr(*e.args[i]);
            }
            out_ << ')';
            break;
        case Expr::Kind::Binary:
            out_ << '(';
            expr(*e.lhs);
            out_ << ' ' << binary_op_text(e.bin_op) << ' ';
            expr(*e.rhs);
            out_ << ')';
            break;
        case Expr::Kind::Unary:
            out_ << (e.un_op == UnaryOp::Not ? "!" : "-") << '(';
            expr(*e.lhs);
            out_ << ')';
            break;
        case Expr::Kind::ArrayLit:
            out_ << '[';
            for (size_t i = 0; i < e.args.size(); i++) {
                if (i)
                    out_ << ", ";
                expr(*e.args[i]);
            }
            out_ << ']';
            break;
        }
    }

private:
    std::ostringstream out_;
    int indent_ = 0;

    void line() { out_ << '\n' << std::string(static_cast<size_t>(indent_) * 4, ' '); }

    void print_contract(const ContractDef& c) {
        out_ << "contract " << c.name << " {";
        indent_++;
        for (const auto& e : c.enums) {
            line();
            out_ << "enum " << e->name << " { ";
            for (size_t i = 0; i < e->variants.size(); i++) {
                if (i)
                    out_ << ", ";
                out_ << e->variants[i];
            }
            out_ << " }";
        }
        for (const auto& s : c.structs) {
            line();
            out_ << "struct " << s->name << " {";
            indent_++;
            for (const auto& f : s->fields) {
                line();
                out_ << f->declared->to_string() << ' ' << f->name << ';';
            }
            indent_--;
            line();
            out_ << '}';
        }
        for (const auto& v : c.state_vars) {
            line();
            out_ << v->declared->to_string();
            visibility(v->vis);
            out_ << ' ' << v->name;
            if (v->init) {
                out_ << " = ";
                expr(*v->init);
            }
            out_ << ';';
        }
        for (const auto& m : c.modifiers) {
            line();
            out_ << "modifier " << m->name << '(';
            params(m->params);
            out_ << ") ";
            stmt(*m->body);
        }
        for (const auto& f : c.functions) {
            line();
            if (f->is_constructor)
                out_ << "constructor(";
            else
                out_ << "function " << f->name << '(';
            params(f->params);
            out_ << ')';
            visibility(f->vis);
            switch (f->mut) {
            case Mutability::None: break;
            case Mutability::View: out_ << " view"; break;
            case Mutability::Pure: out_ << " pure"; break;
            case Mutability::Payable: out_ << " payable"; break;
            }
            for (const auto& m : f->modifiers)
                out_ << ' ' << m;
            if (!f->returns.empty()) {
                out_ << " returns (";
                for (size_t i = 0; i < f->returns.size(); i++) {
                    if (i)
                        out_ << ", ";
                    out_ << f->returns[i]->to_string();
                }
                out_ << ')';
            }
            out_ << ' ';
            stmt(*f->body);
        }
        indent_--;
        line();
        out_ << "}";
        line();
    }

    void visibility(Visibility v) {
        switch (v) {
        case Visibility::Default: break;
        case Visibility::Public: out_ << " public"; break;
        case Visibility::Private: out_ << " private"; break;
        case Visibility::Internal: out_ << " internal"; break;
        case Visibility::External: out_ << " external"; break;
        }
    }

    void params(const std::vector<std::unique_ptr<VarDecl>>& ps) {
        for (size_t i = 0; i < ps.size(); i++) {
            if (i)
                out_ << ", ";
            out_ << ps[i]->declared->to_string() << ' ' << ps[i]->name;
        }
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Block:
            out_ << '{';
            indent_++;
            for (const auto& inner : s.stmts) {
                line();
                stmt(*inner);
            }
            indent_--;
            line();
            out_ << '}';
            break;
        case Stmt::Kind::Decl:
            out_ << s.decl->declared->to_string() << ' ' << s.decl->name;
            if (s.decl->init) {
                out_ << " = ";
                expr(*s.decl->init);
            }
            out_ << ';';
            break;
        case Stmt::Kind::Assign:
            expr(*s.target);
            out_ << " = ";
            expr(*s.value);
            out_ << ';';
            break;
        case Stmt::Kind::Compound:
            expr(*s.target);
            out_ << ' ' << binary_op_text(s.bin_op) << "= ";
            expr(*s.value);
            out_ << ';';
            break;
        case Stmt::Kind::IncDec:
            expr(*s.target);
            out_ << (s.increment ? "++" : "--") << ';';
            break;
        case Stmt::Kind::If:
            out_ << "if (";
            expr(*s.cond);
            out_ << ") ";
            stmt(*s.then_branch);
            if (s.else_branch) {
                out_ << " else ";
                stmt(*s.else_branch);
            }
            break;
        case Stmt::Kind::While:
            out_ << "while (";
            expr(*s.cond);
            out_ << ") ";
            stmt(*s.body);
            break;
        case Stmt::Kind::For:
            out_ << "for (";
            if (s.init)
                stmt_no_semi(*s.init);
            out_ << "; ";
            if (s.cond)
                expr(*s.cond);
            out_ << "; ";
            if (s.step)
                stmt_no_semi(*s.step);
            out_ << ") ";
            stmt(*s.body);
            break;
        case Stmt::Kind::Return:
            out_ << "return";
            if (s.value) {
                out_ << ' ';
                expr(*s.value);
            }
            out_ << ';';
            break;
        case Stmt::Kind::Require:
        case Stmt::Kind::Assert:
            out_ << (s.kind == Stmt::Kind::Require ? "require(" : "assert(");
            expr(*s.cond);
            if (!s.message.empty())
                out_ << ", \"" << s.message << '"';
            out_ << ");";
            break;
        case Stmt::Kind::Revert:
            out_ << "revert(\"" << s.message << "\");";
            break;
        case Stmt::Kind::Expr:
            expr(*s.value);
            out_ << ';';
            break;
        case Stmt::Kind::Placeholder:
            out_ << "_;";
            break;
        case Stmt::Kind::TupleAssign:
            out_ << "(bool " << s.decl->name << ",) = ";
            expr(*s.value);
            out_ << ';';
            break;
        }
    }

    // For-loop init/step: same rendering minus the trailing semicolon.
    void stmt_no_semi(const Stmt& s) {
        std::ostringstream saved;
        saved.swap(out_);
        stmt(s);
        std::string text = out_.str();
        out_.swap(saved);
        if (!text.empty() && text.back() == ';')
            text.pop_back();
        out_ << text;
    }
};

} // namespace

std::string print(const SourceUnit& unit) {
    Printer p;
    return p.run(unit);
}

std::string print_expr(const Expr& e) {
    Printer p;
    p.expr(e);
    return p.str();
}

} // namespace minisol

#include "minisol/walk.hpp"

namespace minisol {

void walk_expression_tree(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    if (e.lhs)
        walk_expression_tree(*e.lhs, fn);
    if (e.rhs)
        walk_expression_tree(*e.rhs, fn);
    if (e.callee)
        walk_expression_tree(*e.callee, fn);
    if (e.call_value)
        walk_expression_tree(*e.call_value, fn);
    for (const auto& a : e.args)
        walk_expression_tree(*a, fn);
}

void walk_statements(const Stmt& s, const std::function<void(const Stmt&)>& fn) {
    fn(s);
    for (const Stmt* child : {s.then_branch.get(), s.else_branch.get(), s.body.get(),
                              s.init.get(), s.step.get()})
        if (child)
            walk_statements(*child, fn);
    for (const auto& child : s.stmts)
        walk_statements(*child, fn);
}

void walk_expressions(const Stmt& root, const std::function<void(const Expr&)>& fn) {
    walk_statements(root, [&](const Stmt& s) {
        for (const Expr* e : {s.target.get(), s.value.get(), s.cond.get()})
            if (e)
                walk_expression_tree(*e, fn);
        if (s.decl && s.decl->init)
            walk_expression_tree(*s.decl->init, fn);
    });
}

} // namespace minisol

#pragma once

#include <functional>

#include "minisol/ast.hpp"

namespace minisol {

// Pre-order traversal over every statement / expression in a body.
void walk_statements(const Stmt& root, const std::function<void(const Stmt&)>& fn);
void walk_expressions(const Stmt& root, const std::function<void(const Expr&)>& fn);
void walk_expression_tree(const Expr& root, const std::function<void(const Expr&)>& fn);

} // namespace minisol

#pragma once

#include <string>

#include "minisol/ast.hpp"

namespace minisol {

// Deterministic source rendering of an AST. print(parse(print(ast))) is
// byte-identical to print(ast); tests use this for the round-trip property.
std::string print(const SourceUnit& unit);
std::string print_expr(const Expr& e);

} // namespace minisol

#pragma once

#include "minisol/ir.hpp"
#include "minisol/resolver.hpp"
#include "minisol/source.hpp"

namespace minisol {

// Lowers one function body (modifier bodies inlined at `_;`) to a CFG of
// three-address instructions. `file` supplies source text for mapping-key
// display names.
Cfg lower_function(const FunctionDecl& func, const SymbolTable& symbols,
                   const SourceFile& file);

} // namespace minisol

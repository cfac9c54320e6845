#pragma once

#include <vector>

#include "minisol/ast.hpp"
#include "minisol/token.hpp"

namespace minisol {

// Parses a token stream into a SourceUnit. Fails fast with
// FrontendError(Parse) on the first error; constructs outside the MiniSol
// subset are rejected with an "unsupported construct" message.
SourceUnit parse(const std::vector<Token>& tokens);

} // namespace minisol

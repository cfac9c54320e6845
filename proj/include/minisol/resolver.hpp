#pragma once

#include <map>
#include <string>

#include "minisol/ast.hpp"

namespace minisol {

// Variable identities for the implicit transaction context.
inline constexpr int kMsgSenderId = -1;
inline constexpr int kMsgValueId = -2;

struct SymbolTable {
    const ContractDef* contract = nullptr;
    std::map<std::string, const EnumDecl*> enums;
    std::map<std::string, const StructDecl*> structs;
    std::map<std::string, VarDecl*> state_vars;
    std::map<int, std::string> names; // var_id -> display name
    int next_var_id = 0;

    const ModifierDecl* find_modifier(const std::string& name) const;
};

struct ResolveResult {
    std::map<const ContractDef*, SymbolTable> tables;
};

// Binds every identifier, assigns a unique var_id to every declaration, and
// annotates every expression with a MiniSolType. Throws
// FrontendError(Resolve/Type) on unknown names and operand mismatches.
ResolveResult resolve(SourceUnit& unit);

} // namespace minisol

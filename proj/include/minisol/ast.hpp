#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minisol/bigint.hpp"
#include "minisol/source.hpp"
#include "minisol/type.hpp"

namespace minisol {

enum class Visibility { Default, Public, Private, Internal, External };
enum class Mutability { None, View, Pure, Payable };

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Not, Neg };

bool is_arith(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);
const char* binary_op_text(BinaryOp op);

enum class Builtin { None, MsgSender, MsgValue, ArrayLength };

struct VarDecl;
struct EnumDecl;
struct StructDecl;

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        IntLit,
        BoolLit,
        StringLit,
        Ident,
        Member,   // lhs . name
        Index,    // lhs [ rhs ]
        Call,     // callee ( args ), optionally with {value: call_value}
        Binary,
        Unary,
        ArrayLit,
    };

    Kind kind;
    Span span;

    BigInt int_value;
    bool bool_value = false;
    std::string name; // identifier / member name / string content

    BinaryOp bin_op{};
    UnaryOp un_op{};
    ExprPtr lhs, rhs;

    ExprPtr callee;
    std::vector<ExprPtr> args;
    ExprPtr call_value; // .call{value: e}

    // Filled in by resolve().
    TypePtr type;
    const VarDecl* decl = nullptr;       // Ident
    const EnumDecl* cast_enum = nullptr; // Call recognized as enum cast
    bool is_payable_cast = false;        // Call recognized as payable(...)
    Builtin builtin = Builtin::None;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarDecl {
    std::string name;
    TypePtr declared;
    ExprPtr init;
    Span span;
    Visibility vis = Visibility::Default;
    bool is_state = false;
    bool is_param = false;
    int var_id = -100; // assigned by resolve()
};

struct Stmt {
    enum class Kind {
        Decl,        // local declaration, optional init
        Assign,      // target = value
        Compound,    // target op= value
        IncDec,      // target++ / target--
        If,
        While,
        For,
        Return,
        Require,
        Assert,
        Revert,
        Expr,        // expression statement
        Block,
        Placeholder, // `_;` in a modifier body
        TupleAssign, // (bool ok,) = <call expr>;
    };

    Kind kind;
    Span span;

    std::unique_ptr<VarDecl> decl; // Decl; TupleAssign's bool binding
    ExprPtr target;                // Assign/Compound/IncDec lhs
    ExprPtr value;                 // rhs / condition / returned expr / call
    BinaryOp bin_op{};             // Compound
    bool increment = false;        // IncDec

    ExprPtr cond;
    StmtPtr then_branch, else_branch, body;
    StmtPtr init, step; // For
    std::string message; // require/assert/revert message literal

    std::vector<StmtPtr> stmts; // Block
};

struct EnumDecl {
    std::string name;
    std::vector<std::string> variants;
    Span span;
};

struct StructDecl {
    std::string name;
    std::vector<std::unique_ptr<VarDecl>> fields;
    Span span;
};

struct FunctionDecl {
    std::string name;
    bool is_constructor = false;
    std::vector<std::unique_ptr<VarDecl>> params;
    std::vector<TypePtr> returns;
    Mutability mut = Mutability::None;
    Visibility vis = Visibility::Default;
    std::vector<std::string> modifiers;
    StmtPtr body;
    Span span;
};

struct ModifierDecl {
    std::string name;
    std::vector<std::unique_ptr<VarDecl>> params;
    StmtPtr body;
    Span span;
};

struct ContractDef {
    std::string name;
    Span span;
    std::vector<std::unique_ptr<EnumDecl>> enums;
    std::vector<std::unique_ptr<StructDecl>> structs;
    std::vector<std::unique_ptr<VarDecl>> state_vars;
    std::vector<std::unique_ptr<FunctionDecl>> functions; // constructor included
    std::vector<std::unique_ptr<ModifierDecl>> modifiers;

    const FunctionDecl* constructor() const;
};

struct SourceUnit {
    std::vector<std::unique_ptr<ContractDef>> contracts;
};

} // namespace minisol

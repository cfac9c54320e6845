#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minisol/ast.hpp"
#include "minisol/bigint.hpp"
#include "minisol/source.hpp"
#include "minisol/type.hpp"

namespace minisol {

struct Place;

// An IR value: literal, place read, transaction builtin, or an
// unconstrained value of a type (external call results).
struct Operand {
    enum class Kind { Literal, PlaceRef, MsgSender, MsgValue, Havoc };

    Kind kind = Kind::Literal;
    BigInt lit;
    TypePtr type;
    std::shared_ptr<Place> place;

    static Operand literal(BigInt v, TypePtr type);
    static Operand place_ref(Place p);
    static Operand msg_sender();
    static Operand msg_value();
    static Operand havoc(TypePtr type);
};

struct PathElem {
    enum class Kind { Field, Index, Length };
    Kind kind = Kind::Field;
    std::string field;
    Operand index;
};

// A storage location: variable identity plus an access path.
struct Place {
    int root = 0;
    std::string root_name;
    std::vector<PathElem> path;
    TypePtr type; // type of the accessed location

    bool is_simple_var() const { return path.empty(); }
    bool is_length_of() const {
        return path.size() == 1 && path[0].kind == PathElem::Kind::Length;
    }
};

std::string render_operand(const Operand& op);
std::string render_place(const Place& p);

struct IrInstr {
    enum class Kind {
        Assign,           // dest := a
        BinOp,            // dest := a <op> b
        UnOp,             // dest := <op> a
        EnumCast,         // dest := Enum(a)
        Require,          // require(a)
        Assert,           // assert(a)
        Revert,
        ExternalTransfer, // send `b` (amount) to `a` (recipient)
        Return,
    };

    Kind kind;
    Span span;
    Place dest;
    Operand a, b;
    BinaryOp bin_op{};
    UnaryOp un_op{};
    TypePtr result_type; // BinOp/UnOp/EnumCast/Assign value type
    const EnumDecl* enum_decl = nullptr;
    std::vector<Operand> returns;

    // Assign from an array literal; `a` is unused, elements are in order.
    bool is_array_literal = false;
    std::vector<Operand> array_elems;

    // ExternalTransfer whose amount is the quotient of a tracked division.
    bool amount_is_quotient = false;
    Operand quotient_dividend, quotient_divisor;
    bool remainder_handled = false; // a matching `%` exists in the function
};

std::string render_instr(const IrInstr& instr);

enum class EdgeKind { Unconditional, TrueBranch, FalseBranch };

struct BasicBlock {
    int id = 0;
    std::vector<IrInstr> instrs;
    // Set on blocks with true/false successors; evaluated in this block.
    std::optional<Operand> branch_cond;
};

struct CfgEdge {
    int from = 0, to = 0;
    EdgeKind kind = EdgeKind::Unconditional;
};

struct Cfg {
    const FunctionDecl* function = nullptr;
    int entry = 0;
    std::vector<BasicBlock> blocks;
    std::vector<CfgEdge> edges;

    std::map<int, std::string> temp_names;       // temp var_id -> "%k"
    std::map<int, IrInstr> temp_defs;            // temp var_id -> defining instr
    std::map<int, std::vector<std::string>> mapping_keys; // var_id -> key exprs (source text)
    std::vector<BigInt> literals;                // widening thresholds
    std::set<int> written_roots;                 // variable ids assigned in this body

    std::vector<int> successors(int node) const;
    std::vector<int> predecessors(int node) const;
    const CfgEdge* edge_between(int from, int to) const;
};

// Deterministic reverse post-order; the entry block is first.
std::vector<int> reverse_post_order(const Cfg& cfg);

// Structural invariant check (edge arities, reachability, temp
// single-assignment); throws EngineError on violation.
void validate_cfg(const Cfg& cfg);

// Plain-text adjacency listing for --dump-cfg.
std::string dump_cfg(const Cfg& cfg);

} // namespace minisol

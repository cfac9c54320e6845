#include "minisol/type.hpp"

#include <cassert>

#include "minisol/ast.hpp"

namespace minisol {

namespace {
TypePtr make(MiniSolType t) { return std::make_shared<const MiniSolType>(std::move(t)); }
} // namespace

TypePtr MiniSolType::uint_t(int bits) {
    MiniSolType t;
    t.kind = Kind::UInt;
    t.bits = bits;
    return make(std::move(t));
}

TypePtr MiniSolType::int_t(int bits) {
    MiniSolType t;
    t.kind = Kind::Int;
    t.bits = bits;
    return make(std::move(t));
}

TypePtr MiniSolType::boolean() {
    MiniSolType t;
    t.kind = Kind::Bool;
    return make(std::move(t));
}

TypePtr MiniSolType::address() {
    MiniSolType t;
    t.kind = Kind::Address;
    return make(std::move(t));
}

TypePtr MiniSolType::enum_t(const EnumDecl* decl) {
    MiniSolType t;
    t.kind = Kind::Enum;
    t.enum_decl = decl;
    return make(std::move(t));
}

TypePtr MiniSolType::array(TypePtr elem, std::optional<uint64_t> length) {
    MiniSolType t;
    t.kind = Kind::Array;
    t.elem = std::move(elem);
    t.length = length;
    return make(std::move(t));
}

TypePtr MiniSolType::mapping(TypePtr key, TypePtr value) {
    MiniSolType t;
    t.kind = Kind::Mapping;
    t.key = std::move(key);
    t.value = std::move(value);
    return make(std::move(t));
}

TypePtr MiniSolType::struct_t(const StructDecl* decl) {
    MiniSolType t;
    t.kind = Kind::Struct;
    t.struct_decl = decl;
    return make(std::move(t));
}

TypePtr MiniSolType::named(std::string name) {
    MiniSolType t;
    t.kind = Kind::Named;
    t.name = std::move(name);
    return make(std::move(t));
}

TypeDomain MiniSolType::domain() const {
    switch (kind) {
    case Kind::UInt:
        return TypeDomain{0, pow2(static_cast<unsigned>(bits)) - 1};
    case Kind::Int:
        return TypeDomain{-pow2(static_cast<unsigned>(bits - 1)),
                          pow2(static_cast<unsigned>(bits - 1)) - 1};
    case Kind::Bool:
        return TypeDomain{0, 1};
    case Kind::Address:
        return TypeDomain{0, pow2(160) - 1};
    case Kind::Enum:
        return TypeDomain{0, BigInt(enum_decl->variants.size()) - 1};
    default:
        assert(false && "domain() on non-scalar type");
        return TypeDomain{0, 0};
    }
}

std::string MiniSolType::to_string() const {
    switch (kind) {
    case Kind::UInt:
        return "uint" + std::to_string(bits);
    case Kind::Int:
        return "int" + std::to_string(bits);
    case Kind::Bool:
        return "bool";
    case Kind::Address:
        return "address";
    case Kind::Enum:
        return enum_decl ? enum_decl->name : name;
    case Kind::Struct:
        return struct_decl ? struct_decl->name : name;
    case Kind::Array:
        return elem->to_string() +
               (length ? "[" + std::to_string(*length) + "]" : "[]");
    case Kind::Mapping:
        return "mapping(" + key->to_string() + " => " + value->to_string() + ")";
    case Kind::Named:
        return name;
    }
    return "?";
}

bool same_type(const TypePtr& a, const TypePtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case MiniSolType::Kind::UInt:
    case MiniSolType::Kind::Int:
        return a->bits == b->bits;
    case MiniSolType::Kind::Bool:
    case MiniSolType::Kind::Address:
        return true;
    case MiniSolType::Kind::Enum:
        return a->enum_decl == b->enum_decl;
    case MiniSolType::Kind::Struct:
        return a->struct_decl == b->struct_decl;
    case MiniSolType::Kind::Array:
        return a->length == b->length && same_type(a->elem, b->elem);
    case MiniSolType::Kind::Mapping:
        return same_type(a->key, b->key) && same_type(a->value, b->value);
    case MiniSolType::Kind::Named:
        return a->name == b->name;
    }
    return false;
}

} // namespace minisol

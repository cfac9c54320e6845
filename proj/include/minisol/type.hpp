#pragma once

#include <memory>
#include <optional>
#include <string>

#include "minisol/bigint.hpp"

namespace minisol {

struct EnumDecl;
struct StructDecl;

class MiniSolType;
using TypePtr = std::shared_ptr<const MiniSolType>;

// Inclusive value range of a scalar type.
struct TypeDomain {
    BigInt min;
    BigInt max;
};

class MiniSolType {
public:
    enum class Kind {
        UInt,    // bits in {8,16,32,64,128,256}
        Int,
        Bool,
        Address,
        Enum,
        Array,   // fixed (length set) or dynamic
        Mapping,
        Struct,
        Named,   // unresolved enum/struct reference, rewritten by resolve()
    };

    Kind kind = Kind::UInt;
    int bits = 256;
    const EnumDecl* enum_decl = nullptr;
    const StructDecl* struct_decl = nullptr;
    TypePtr elem;                       // array element
    TypePtr key, value;                 // mapping
    std::optional<uint64_t> length;     // fixed-size array
    std::string name;                   // Named

    static TypePtr uint_t(int bits = 256);
    static TypePtr int_t(int bits = 256);
    static TypePtr boolean();
    static TypePtr address();
    static TypePtr enum_t(const EnumDecl* decl);
    static TypePtr array(TypePtr elem, std::optional<uint64_t> length = std::nullopt);
    static TypePtr mapping(TypePtr key, TypePtr value);
    static TypePtr struct_t(const StructDecl* decl);
    static TypePtr named(std::string name);

    bool is_scalar() const {
        return kind == Kind::UInt || kind == Kind::Int || kind == Kind::Bool ||
               kind == Kind::Address || kind == Kind::Enum;
    }
    bool is_numeric() const { return kind == Kind::UInt || kind == Kind::Int; }
    bool is_unsigned() const { return kind == Kind::UInt; }

    // Scalar types only.
    TypeDomain domain() const;

    std::string to_string() const;
};

bool same_type(const TypePtr& a, const TypePtr& b);

} // namespace minisol

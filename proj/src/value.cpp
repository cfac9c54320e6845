#include "minisol/value.hpp"

#include <algorithm>
#include <cassert>

#include "minisol/ast.hpp"

namespace minisol {

namespace {

// Fixed-size arrays up to this length are tracked per element.
constexpr uint64_t kMaxTrackedElements = 64;

std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
}

std::set<int> unite(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

} // namespace

AbstractValue AbstractValue::scalar(Interval itv, TypePtr type) {
    AbstractValue v;
    v.kind = Kind::Scalar;
    v.itv = std::move(itv);
    v.type = std::move(type);
    return v;
}

AbstractValue AbstractValue::default_of(const TypePtr& type) {
    AbstractValue v;
    v.type = type;
    switch (type->kind) {
    case MiniSolType::Kind::Array:
        v.kind = Kind::Array;
        if (type->length) {
            v.length = Interval::singleton(BigInt(*type->length));
            if (*type->length <= kMaxTrackedElements) {
                v.per_element = true;
                v.elems.assign(*type->length, default_of(type->elem));
            } else {
                v.elems.push_back(default_of(type->elem));
            }
        } else {
            v.length = Interval::singleton(0);
            v.elems.push_back(default_of(type->elem));
        }
        break;
    case MiniSolType::Kind::Mapping:
        v.kind = Kind::Mapping;
        v.elems.push_back(default_of(type->value));
        break;
    case MiniSolType::Kind::Struct:
        v.kind = Kind::Struct;
        for (const auto& f : type->struct_decl->fields)
            v.fields.emplace(f->name, default_of(f->declared));
        break;
    default:
        v.kind = Kind::Scalar;
        v.itv = Interval::singleton(0);
        break;
    }
    return v;
}

AbstractValue AbstractValue::top_of(const TypePtr& type) {
    AbstractValue v;
    v.type = type;
    v.explicitly_assigned = true;
    switch (type->kind) {
    case MiniSolType::Kind::Array:
        v.kind = Kind::Array;
        if (type->length) {
            v.length = Interval::singleton(BigInt(*type->length));
            if (*type->length <= kMaxTrackedElements) {
                v.per_element = true;
                v.elems.assign(*type->length, top_of(type->elem));
            } else {
                v.elems.push_back(top_of(type->elem));
            }
        } else {
            v.length = Interval::top_of(MiniSolType::uint_t(256)->domain());
            v.elems.push_back(top_of(type->elem));
        }
        break;
    case MiniSolType::Kind::Mapping:
        v.kind = Kind::Mapping;
        v.elems.push_back(top_of(type->value));
        break;
    case MiniSolType::Kind::Struct:
        v.kind = Kind::Struct;
        for (const auto& f : type->struct_decl->fields)
            v.fields.emplace(f->name, top_of(f->declared));
        break;
    default:
        v.kind = Kind::Scalar;
        v.itv = Interval::top_of(type->domain());
        break;
    }
    return v;
}

const AbstractValue& AbstractValue::summary() const {
    assert(!elems.empty());
    return elems.front();
}

AbstractValue AbstractValue::element_summary() const {
    assert(kind == Kind::Array || kind == Kind::Mapping);
    AbstractValue out = elems.front();
    for (size_t i = 1; i < elems.size(); i++)
        out = join_value(out, elems[i]);
    return out;
}

AbstractValue join_value(const AbstractValue& a, const AbstractValue& b) {
    assert(a.kind == b.kind && "join over mismatched value shapes");
    AbstractValue out = a;
    out.explicitly_assigned = a.explicitly_assigned || b.explicitly_assigned;
    switch (a.kind) {
    case AbstractValue::Kind::Scalar:
        out.itv = join(a.itv, b.itv);
        out.below_length_of = intersect(a.below_length_of, b.below_length_of);
        break;
    case AbstractValue::Kind::Array:
        out.length = join(a.length, b.length);
        if (a.per_element && b.per_element && a.elems.size() == b.elems.size()) {
            for (size_t i = 0; i < a.elems.size(); i++)
                out.elems[i] = join_value(a.elems[i], b.elems[i]);
        } else {
            out.per_element = false;
            out.elems.assign(1, join_value(a.element_summary(), b.element_summary()));
        }
        break;
    case AbstractValue::Kind::Mapping:
        out.elems[0] = join_value(a.elems[0], b.elems[0]);
        break;
    case AbstractValue::Kind::Struct:
        for (auto& [name, value] : out.fields)
            value = join_value(value, b.fields.at(name));
        break;
    }
    return out;
}

AbstractValue meet_value(const AbstractValue& a, const AbstractValue& b) {
    assert(a.kind == b.kind && "meet over mismatched value shapes");
    AbstractValue out = a;
    out.explicitly_assigned = a.explicitly_assigned && b.explicitly_assigned;
    switch (a.kind) {
    case AbstractValue::Kind::Scalar:
        out.itv = meet(a.itv, b.itv);
        out.below_length_of = unite(a.below_length_of, b.below_length_of);
        break;
    case AbstractValue::Kind::Array:
        out.length = meet(a.length, b.length);
        if (a.per_element && b.per_element && a.elems.size() == b.elems.size()) {
            for (size_t i = 0; i < a.elems.size(); i++)
                out.elems[i] = meet_value(a.elems[i], b.elems[i]);
        } else {
            out.per_element = false;
            out.elems.assign(1, meet_value(a.element_summary(), b.element_summary()));
        }
        break;
    case AbstractValue::Kind::Mapping:
        out.elems[0] = meet_value(a.elems[0], b.elems[0]);
        break;
    case AbstractValue::Kind::Struct:
        for (auto& [name, value] : out.fields)
            value = meet_value(value, b.fields.at(name));
        break;
    }
    return out;
}

bool value_leq(const AbstractValue& a, const AbstractValue& b) {
    assert(a.kind == b.kind && "leq over mismatched value shapes");
    if (a.explicitly_assigned && !b.explicitly_assigned)
        return false;
    switch (a.kind) {
    case AbstractValue::Kind::Scalar:
        if (!leq(a.itv, b.itv))
            return false;
        return std::includes(a.below_length_of.begin(), a.below_length_of.end(),
                             b.below_length_of.begin(), b.below_length_of.end());
    case AbstractValue::Kind::Array:
        if (!leq(a.length, b.length))
            return false;
        if (a.per_element && b.per_element && a.elems.size() == b.elems.size()) {
            for (size_t i = 0; i < a.elems.size(); i++)
                if (!value_leq(a.elems[i], b.elems[i]))
                    return false;
            return true;
        }
        return value_leq(a.element_summary(), b.element_summary());
    case AbstractValue::Kind::Mapping:
        return value_leq(a.elems[0], b.elems[0]);
    case AbstractValue::Kind::Struct:
        for (const auto& [name, value] : a.fields)
            if (!value_leq(value, b.fields.at(name)))
                return false;
        return true;
    }
    return false;
}

AbstractValue widen_value(const AbstractValue& a, const AbstractValue& b,
                          const std::vector<BigInt>& thresholds) {
    assert(a.kind == b.kind && "widen over mismatched value shapes");
    AbstractValue out = a;
    out.explicitly_assigned = a.explicitly_assigned || b.explicitly_assigned;
    switch (a.kind) {
    case AbstractValue::Kind::Scalar:
        out.itv = widen(a.itv, b.itv, thresholds, a.type->domain());
        out.below_length_of = intersect(a.below_length_of, b.below_length_of);
        break;
    case AbstractValue::Kind::Array:
        out.length = widen(a.length, b.length, thresholds,
                           MiniSolType::uint_t(256)->domain());
        if (a.per_element && b.per_element && a.elems.size() == b.elems.size()) {
            for (size_t i = 0; i < a.elems.size(); i++)
                out.elems[i] = widen_value(a.elems[i], b.elems[i], thresholds);
        } else {
            out.per_element = false;
            out.elems.assign(
                1, widen_value(a.element_summary(), b.element_summary(), thresholds));
        }
        break;
    case AbstractValue::Kind::Mapping:
        out.elems[0] = widen_value(a.elems[0], b.elems[0], thresholds);
        break;
    case AbstractValue::Kind::Struct:
        for (auto& [name, value] : out.fields)
            value = widen_value(value, b.fields.at(name), thresholds);
        break;
    }
    return out;
}

AbstractState join_state(const AbstractState& a, const AbstractState& b) {
    if (a.is_bottom())
        return b;
    if (b.is_bottom())
        return a;
    AbstractState out = a;
    for (const auto& [id, value] : b.vars) {
        auto it = out.vars.find(id);
        if (it == out.vars.end())
            out.vars.emplace(id, value); // absent == unreachable on that side
        else
            it->second = join_value(it->second, value);
    }
    return out;
}

bool state_leq(const AbstractState& a, const AbstractState& b) {
    if (a.is_bottom())
        return true;
    if (b.is_bottom())
        return false;
    for (const auto& [id, value] : a.vars) {
        auto it = b.vars.find(id);
        if (it == b.vars.end() || !value_leq(value, it->second))
            return false;
    }
    return true;
}

AbstractState widen_state(const AbstractState& a, const AbstractState& b,
                          const std::vector<BigInt>& thresholds) {
    if (a.is_bottom())
        return b;
    if (b.is_bottom())
        return a;
    AbstractState out = a;
    for (const auto& [id, value] : b.vars) {
        auto it = out.vars.find(id);
        if (it == out.vars.end())
            out.vars.emplace(id, value);
        else
            it->second = widen_value(it->second, value, thresholds);
    }
    return out;
}

} // namespace minisol

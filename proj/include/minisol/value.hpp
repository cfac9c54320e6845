#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "minisol/interval.hpp"
#include "minisol/type.hpp"

namespace minisol {

// Recursive abstract value mirroring the declared type's shape: scalars are
// intervals; arrays carry a length interval plus either per-element values
// (small fixed-size arrays, enabling strong updates) or a single element
// summary; mappings carry a value summary; structs are per-field.
struct AbstractValue {
    enum class Kind { Scalar, Array, Mapping, Struct };

    Kind kind = Kind::Scalar;
    TypePtr type;
    bool explicitly_assigned = false;

    Interval itv; // Scalar

    Interval length;                  // Array
    std::vector<AbstractValue> elems; // Array: n entries (per-element) or 1 (summary);
                                      // Mapping: 1 entry (value summary)
    bool per_element = false;         // Array representation flag

    std::map<std::string, AbstractValue> fields; // Struct

    // Relational crumbs for bounds checking: array roots this scalar is
    // known to be strictly below the length of.
    std::set<int> below_length_of;

    static AbstractValue scalar(Interval itv, TypePtr type);
    static AbstractValue default_of(const TypePtr& type);
    static AbstractValue top_of(const TypePtr& type);

    // Arrays/mappings: hull of the possible element values.
    const AbstractValue& summary() const;
    AbstractValue element_summary() const;
};

AbstractValue join_value(const AbstractValue& a, const AbstractValue& b);
AbstractValue meet_value(const AbstractValue& a, const AbstractValue& b);
bool value_leq(const AbstractValue& a, const AbstractValue& b);
AbstractValue widen_value(const AbstractValue& old_value, const AbstractValue& new_value,
                          const std::vector<BigInt>& thresholds);

// Per-program-point fact table: variable identity -> abstract value.
// reachable == false is the Bottom state.
struct AbstractState {
    bool reachable = true;
    std::map<int, AbstractValue> vars;

    static AbstractState bottom() {
        AbstractState s;
        s.reachable = false;
        return s;
    }
    bool is_bottom() const { return !reachable; }
};

AbstractState join_state(const AbstractState& a, const AbstractState& b);
bool state_leq(const AbstractState& a, const AbstractState& b);
AbstractState widen_state(const AbstractState& old_state, const AbstractState& new_state,
                          const std::vector<BigInt>& thresholds);

} // namespace minisol

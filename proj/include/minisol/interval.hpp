#pragma once

#include <string>
#include <vector>

#include "minisol/ast.hpp"
#include "minisol/bigint.hpp"
#include "minisol/type.hpp"

namespace minisol {

// Closed integer interval, or Bottom. Bounds are arbitrary precision; the
// declared type's domain is applied by the operations, not stored here.
class Interval {
public:
    Interval() = default; // Bottom
    Interval(BigInt lo, BigInt hi) : bottom_(false), lo_(std::move(lo)), hi_(std::move(hi)) {}

    static Interval bottom() { return Interval(); }
    static Interval singleton(BigInt v) { return Interval(v, v); }
    static Interval top_of(const TypeDomain& d) { return Interval(d.min, d.max); }

    bool is_bottom() const { return bottom_; }
    const BigInt& lo() const { return lo_; }
    const BigInt& hi() const { return hi_; }

    bool is_singleton() const { return !bottom_ && lo_ == hi_; }
    bool contains(const BigInt& v) const { return !bottom_ && lo_ <= v && v <= hi_; }
    bool contains_zero() const { return contains(0); }
    bool contained_in(const Interval& other) const {
        if (bottom_)
            return true;
        return !other.bottom_ && other.lo_ <= lo_ && hi_ <= other.hi_;
    }

    bool operator==(const Interval&) const = default;

private:
    bool bottom_ = true;
    BigInt lo_, hi_;
};

struct BinOpResult {
    Interval value;
    bool overflow_possible = false;
    bool div_by_zero_possible = false;
};

// Checked (Solidity >= 0.8) interval arithmetic: the result is the hull of
// the non-reverting concrete results, intersected with the result type's
// domain. overflow_possible / div_by_zero_possible report whether any
// concrete pair reverts for that reason. Bottom operands propagate Bottom
// with both flags false.
BinOpResult interval_binop(BinaryOp op, const Interval& a, const Interval& b,
                           const TypeDomain& result_domain);
BinOpResult interval_neg(const Interval& a, const TypeDomain& result_domain);

// Three-valued comparison verdict over the bool domain: [1,1] holds for all
// pairs, [0,0] for none, [0,1] otherwise.
Interval interval_compare(BinaryOp op, const Interval& a, const Interval& b);

// Boolean connectives over bool-valued intervals.
Interval interval_logic(BinaryOp op, const Interval& a, const Interval& b);
Interval interval_not(const Interval& a);

Interval join(const Interval& a, const Interval& b);
Interval meet(const Interval& a, const Interval& b);
bool leq(const Interval& a, const Interval& b);

// Threshold widening: unstable bounds jump to the nearest threshold (the
// type extremes, 0 and 1 are always considered), then clamp to the domain.
Interval widen(const Interval& old_value, const Interval& new_value,
               const std::vector<BigInt>& thresholds, const TypeDomain& domain);

// Canonical rendering: "[lo, hi]"; the uint256 maximum prints as "max";
// Bottom prints as U+22A5.
std::string render_interval(const Interval& itv);
std::string render_bigint(const BigInt& v);

} // namespace minisol

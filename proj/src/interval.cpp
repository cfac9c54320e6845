#include "minisol/interval.hpp"

#include <algorithm>
#include <cassert>

namespace minisol {

namespace {

// Below this width product both operand ranges are enumerated, which keeps
// results exact even where endpoint formulas over-approximate (mul with
// clamping, mod).
const BigInt kEnumerationWidth = 64;

bool small_enough(const Interval& a, const Interval& b) {
    return a.hi() - a.lo() < kEnumerationWidth && b.hi() - b.lo() < kEnumerationWidth;
}

BigInt apply_op(BinaryOp op, const BigInt& x, const BigInt& y) {
    switch (op) {
    case BinaryOp::Add: return x + y;
    case BinaryOp::Sub: return x - y;
    case BinaryOp::Mul: return x * y;
    case BinaryOp::Div: return x / y; // cpp_int truncates toward zero
    case BinaryOp::Mod: return x % y; // sign of the dividend
    default: assert(false); return 0;
    }
}

BinOpResult clamp(const BigInt& lo, const BigInt& hi, const TypeDomain& dom) {
    BinOpResult r;
    r.overflow_possible = lo < dom.min || hi > dom.max;
    BigInt clo = std::max(lo, dom.min);
    BigInt chi = std::min(hi, dom.max);
    if (clo <= chi)
        r.value = Interval(clo, chi);
    return r;
}

BinOpResult enumerate(BinaryOp op, const Interval& a, const Interval& b,
                      const TypeDomain& dom) {
    BinOpResult r;
    bool any = false;
    BigInt lo, hi;
    for (BigInt x = a.lo(); x <= a.hi(); x++) {
        for (BigInt y = b.lo(); y <= b.hi(); y++) {
            if ((op == BinaryOp::Div || op == BinaryOp::Mod) && y == 0) {
                r.div_by_zero_possible = true;
                continue;
            }
            BigInt v = apply_op(op, x, y);
            if (v < dom.min || v > dom.max) {
                r.overflow_possible = true;
                continue;
            }
            if (!any) {
                lo = hi = v;
                any = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (any)
        r.value = Interval(lo, hi);
    return r;
}

void hull_in(bool& any, BigInt& lo, BigInt& hi, const BigInt& v) {
    if (!any) {
        lo = hi = v;
        any = true;
    } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}

// Sign-uniform sub-ranges of the divisor with zero removed.
std::vector<Interval> nonzero_parts(const Interval& b) {
    std::vector<Interval> parts;
    if (b.lo() < 0)
        parts.emplace_back(b.lo(), std::min(b.hi(), BigInt(-1)));
    if (b.hi() > 0)
        parts.emplace_back(std::max(b.lo(), BigInt(1)), b.hi());
    return parts;
}

BinOpResult div_endpoints(const Interval& a, const Interval& b, const TypeDomain& dom) {
    BinOpResult r;
    r.div_by_zero_possible = b.contains_zero();
    bool any = false;
    BigInt lo, hi;
    for (const Interval& part : nonzero_parts(b)) {
        for (const BigInt& x : {a.lo(), a.hi()})
            for (const BigInt& y : {part.lo(), part.hi()})
                hull_in(any, lo, hi, x / y);
    }
    if (!any)
        return r; // divisor is exactly [0,0]
    BinOpResult clamped = clamp(lo, hi, dom);
    clamped.div_by_zero_possible = r.div_by_zero_possible;
    return clamped;
}

// Conservative remainder hull for one sign-uniform divisor part.
void mod_part(bool& any, BigInt& lo, BigInt& hi, const Interval& a, const Interval& b) {
    BigInt babs_lo = std::min(abs(b.lo()), abs(b.hi()));
    BigInt babs_hi = std::max(abs(b.lo()), abs(b.hi()));
    if (a.is_singleton() && b.is_singleton()) {
        hull_in(any, lo, hi, a.lo() % b.lo());
        return;
    }
    // Non-negative dividend part.
    if (a.hi() >= 0) {
        BigInt alo = std::max(a.lo(), BigInt(0));
        if (a.hi() < babs_lo) { // remainder is the dividend itself
            hull_in(any, lo, hi, alo);
            hull_in(any, lo, hi, a.hi());
        } else {
            hull_in(any, lo, hi, BigInt(0));
            hull_in(any, lo, hi, std::min(a.hi(), BigInt(babs_hi - 1)));
        }
    }
    // Negative dividend part (Solidity: remainder carries the dividend sign).
    if (a.lo() < 0) {
        BigInt ahi = std::min(a.hi(), BigInt(-1));
        if (-a.lo() < babs_lo) {
            hull_in(any, lo, hi, a.lo());
            hull_in(any, lo, hi, ahi);
        } else {
            hull_in(any, lo, hi, BigInt(0));
            hull_in(any, lo, hi, std::max(a.lo(), BigInt(1 - babs_hi)));
        }
    }
}

BinOpResult mod_endpoints(const Interval& a, const Interval& b, const TypeDomain& dom) {
    BinOpResult r;
    r.div_by_zero_possible = b.contains_zero();
    bool any = false;
    BigInt lo, hi;
    for (const Interval& part : nonzero_parts(b))
        mod_part(any, lo, hi, a, part);
    if (!any)
        return r;
    BinOpResult clamped = clamp(lo, hi, dom);
    clamped.div_by_zero_possible = r.div_by_zero_possible;
    return clamped;
}

} // namespace

BinOpResult interval_binop(BinaryOp op, const Interval& a, const Interval& b,
                           const TypeDomain& dom) {
    assert(is_arith(op));
    if (a.is_bottom() || b.is_bottom())
        return BinOpResult{};
    if (small_enough(a, b))
        return enumerate(op, a, b, dom);
    switch (op) {
    case BinaryOp::Add:
        return clamp(a.lo() + b.lo(), a.hi() + b.hi(), dom);
    case BinaryOp::Sub:
        return clamp(a.lo() - b.hi(), a.hi() - b.lo(), dom);
    case BinaryOp::Mul: {
        bool any = false;
        BigInt lo, hi;
        for (const BigInt& x : {a.lo(), a.hi()})
            for (const BigInt& y : {b.lo(), b.hi()})
                hull_in(any, lo, hi, x * y);
        return clamp(lo, hi, dom);
    }
    case BinaryOp::Div:
        return div_endpoints(a, b, dom);
    case BinaryOp::Mod:
        return mod_endpoints(a, b, dom);
    default:
        return BinOpResult{};
    }
}

BinOpResult interval_neg(const Interval& a, const TypeDomain& dom) {
    if (a.is_bottom())
        return BinOpResult{};
    return clamp(-a.hi(), -a.lo(), dom);
}

Interval interval_compare(BinaryOp op, const Interval& a, const Interval& b) {
    assert(is_comparison(op));
    if (a.is_bottom() || b.is_bottom())
        return Interval::bottom();
    bool all_true = false, all_false = false;
    switch (op) {
    case BinaryOp::Lt:
        all_true = a.hi() < b.lo();
        all_false = a.lo() >= b.hi();
        break;
    case BinaryOp::Le:
        all_true = a.hi() <= b.lo();
        all_false = a.lo() > b.hi();
        break;
    case BinaryOp::Gt:
        all_true = a.lo() > b.hi();
        all_false = a.hi() <= b.lo();
        break;
    case BinaryOp::Ge:
        all_true = a.lo() >= b.hi();
        all_false = a.hi() < b.lo();
        break;
    case BinaryOp::Eq:
        all_true = a.is_singleton() && b.is_singleton() && a.lo() == b.lo();
        all_false = a.hi() < b.lo() || b.hi() < a.lo();
        break;
    case BinaryOp::Ne:
        all_false = a.is_singleton() && b.is_singleton() && a.lo() == b.lo();
        all_true = a.hi() < b.lo() || b.hi() < a.lo();
        break;
    default:
        break;
    }
    if (all_true)
        return Interval(1, 1);
    if (all_false)
        return Interval(0, 0);
    return Interval(0, 1);
}

Interval interval_logic(BinaryOp op, const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom())
        return Interval::bottom();
    if (op == BinaryOp::And) {
        BigInt lo = (a.lo() == 1 && b.lo() == 1) ? 1 : 0;
        BigInt hi = (a.hi() == 1 && b.hi() == 1) ? 1 : 0;
        return Interval(lo, hi);
    }
    assert(op == BinaryOp::Or);
    BigInt lo = (a.lo() == 1 || b.lo() == 1) ? 1 : 0;
    BigInt hi = (a.hi() == 1 || b.hi() == 1) ? 1 : 0;
    return Interval(lo, hi);
}

Interval interval_not(const Interval& a) {
    if (a.is_bottom())
        return Interval::bottom();
    return Interval(1 - a.hi(), 1 - a.lo());
}

Interval join(const Interval& a, const Interval& b) {
    if (a.is_bottom())
        return b;
    if (b.is_bottom())
        return a;
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval meet(const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom())
        return Interval::bottom();
    BigInt lo = std::max(a.lo(), b.lo());
    BigInt hi = std::min(a.hi(), b.hi());
    if (lo > hi)
        return Interval::bottom();
    return Interval(lo, hi);
}

bool leq(const Interval& a, const Interval& b) { return a.contained_in(b); }

Interval widen(const Interval& old_value, const Interval& new_value,
               const std::vector<BigInt>& thresholds, const TypeDomain& dom) {
    if (old_value.is_bottom())
        return new_value;
    if (new_value.is_bottom())
        return old_value;
    auto threshold_below = [&](const BigInt& v) {
        BigInt best = dom.min;
        for (const BigInt& t : thresholds)
            if (t <= v && t > best)
                best = t;
        for (const BigInt& t : {BigInt(0), BigInt(1)})
            if (t <= v && t > best)
                best = t;
        return best;
    };
    auto threshold_above = [&](const BigInt& v) {
        BigInt best = dom.max;
        for (const BigInt& t : thresholds)
            if (t >= v && t < best)
                best = t;
        for (const BigInt& t : {BigInt(0), BigInt(1)})
            if (t >= v && t < best)
                best = t;
        return best;
    };
    BigInt lo = new_value.lo() < old_value.lo() ? threshold_below(new_value.lo())
                                                : old_value.lo();
    BigInt hi = new_value.hi() > old_value.hi() ? threshold_above(new_value.hi())
                                                : old_value.hi();
    lo = std::max(lo, dom.min);
    hi = std::min(hi, dom.max);
    return Interval(lo, hi);
}

std::string render_bigint(const BigInt& v) {
    static const BigInt uint256_max = pow2(256) - 1;
    if (v == uint256_max)
        return "max";
    return v.str();
}

std::string render_interval(const Interval& itv) {
    if (itv.is_bottom())
        return "⊥";
    return "[" + render_bigint(itv.lo()) + ", " + render_bigint(itv.hi()) + "]";
}

} // namespace minisol

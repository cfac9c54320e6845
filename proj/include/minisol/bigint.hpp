#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace minisol {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned bits) {
    BigInt one = 1;
    return one << bits;
}

} // namespace minisol

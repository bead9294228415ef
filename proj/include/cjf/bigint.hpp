#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cjf {

// Exponents, field orders and counts routinely exceed 64 bits (2^127 - 1 must
// be exact), so everything that carries a sequence position or a count of
// de Bruijn sequences uses this.
using BigInt = boost::multiprecision::cpp_int;

// a mod m with the result in [0, m), also for negative a.
inline BigInt mod_floor(BigInt a, const BigInt& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

inline BigInt pow2(std::uint64_t e) {
    return BigInt(1) << e;
}

}  // namespace cjf

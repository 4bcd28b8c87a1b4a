#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ucq {

// Answer counts reach |U(D)|^|X| and overflow 64 bits quickly.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigint_pow(const BigInt& base, unsigned exponent) {
    BigInt result = 1;
    BigInt b = base;
    for (unsigned e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= b;
        b *= b;
    }
    return result;
}

}  // namespace ucq

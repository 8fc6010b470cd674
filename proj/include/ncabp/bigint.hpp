#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace ncabp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Largest x with x^k <= v (v >= 0, k >= 1).
inline BigInt iroot(const BigInt& v, unsigned k) {
    if (v < 0 || k == 0) throw std::invalid_argument("iroot: bad arguments");
    if (v <= 1 || k == 1) return v;
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, k) <= v) hi <<= 1;
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, k) <= v)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

inline bool is_perfect_power(const BigInt& v, unsigned k, BigInt& root_out) {
    if (v < 0) return false;
    BigInt r = iroot(v, k);
    if (boost::multiprecision::pow(r, k) == v) {
        root_out = r;
        return true;
    }
    return false;
}

}  // namespace ncabp

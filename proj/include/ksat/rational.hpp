#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ksat {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline rational ratio(const bigint& num, const bigint& den) { return rational(num, den); }

inline bigint binom2(const bigint& x) { return x < 2 ? bigint(0) : x * (x - 1) / 2; }
inline bigint binom3(const bigint& x) { return x < 3 ? bigint(0) : x * (x - 1) * (x - 2) / 6; }

inline bigint ipow(bigint base, unsigned exp) {
    bigint r = 1;
    while (exp--) r *= base;
    return r;
}

inline std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// serialized as "num/den", always with an explicit denominator
inline std::string to_fraction_string(const rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const rational& r) { return static_cast<double>(r); }

} // namespace ksat

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gridpoly {

// Exact integer type for products that may exceed 64 bits.
using Big = boost::multiprecision::cpp_int;

// Default ceiling for exhaustive enumerations (polynomial families,
// code message spaces, subset searches).
inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 24;

// Default ceiling for ring cardinality; oracles enumerate ring elements.
inline constexpr std::uint64_t kDefaultRingCardLimit = std::uint64_t{1} << 20;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input or a violated operation precondition.
struct DomainError : Error {
    using Error::Error;
};

// The requested total cannot be realized by any distribution.
struct InfeasibleError : Error {
    using Error::Error;
};

// An enumeration would exceed the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// A quantity landed on the wrong side of a proved bound; indicates a bug.
struct BoundViolation : Error {
    using Error::Error;
};

struct ParseError : DomainError {
    using DomainError::DomainError;
};

inline long long to_i64_checked(const Big& v, const char* what = "value") {
    if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
        throw DomainError(std::string(what) + " does not fit in 64 bits");
    return v.convert_to<long long>();
}

inline Big big_pow(Big base, std::uint64_t e) {
    Big r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Big binom_big(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Big r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// Deterministic 64-bit mixer used to derive per-instance random streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace gridpoly

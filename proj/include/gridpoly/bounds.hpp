#pragma once

// Closed-form bound calculators.  Each returns an applicability verdict
// rather than silently evaluating outside its hypotheses, so callers can
// tell "bound violated" apart from "bound inapplicable".

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gridpoly/bins.hpp"
#include "gridpoly/common.hpp"

namespace gridpoly::bounds {

enum class Direction {
    LowerBoundOnNonzeros,
    UpperBoundOnZeros,
    UpperBoundOnMultiplicitySum,
    LowerBoundOnMultAdjustedNonzeros,
};

inline const char* direction_name(Direction d) {
    switch (d) {
        case Direction::LowerBoundOnNonzeros: return "lower_bound_on_nonzeros";
        case Direction::UpperBoundOnZeros: return "upper_bound_on_zeros";
        case Direction::UpperBoundOnMultiplicitySum: return "upper_bound_on_multiplicity_sum";
        case Direction::LowerBoundOnMultAdjustedNonzeros:
            return "lower_bound_on_mult_adjusted_nonzeros";
    }
    return "?";
}

struct BoundResult {
    std::string theorem;
    long long value = 0;
    Direction direction = Direction::LowerBoundOnNonzeros;
    bool applicable = true;
    std::string reason;  // set when inapplicable

    static BoundResult inapplicable(std::string theorem, Direction dir, std::string why) {
        BoundResult r;
        r.theorem = std::move(theorem);
        r.direction = dir;
        r.applicable = false;
        r.reason = std::move(why);
        return r;
    }
};

namespace detail {

inline void check_sizes(const std::vector<long long>& sizes) {
    if (sizes.empty()) throw DomainError("need at least one grid dimension");
    for (long long a : sizes)
        if (a < 1) throw DomainError("grid sizes must be positive");
}

inline BoundResult make(std::string theorem, Direction dir, const Big& value) {
    BoundResult r;
    r.theorem = std::move(theorem);
    r.direction = dir;
    r.value = to_i64_checked(value, "bound value");
    return r;
}

}  // namespace detail

// Nonzeros of a degree-d polynomial on a grid with the given sizes are at
// least m(a_1,...,a_n; sum a_i - d); this is 1 once d eats all the slack.
inline BoundResult alon_furedi_nonzeros(const std::vector<long long>& sizes, long long d) {
    detail::check_sizes(sizes);
    if (d < 0) throw DomainError("degree must be non-negative");
    const long long total = std::accumulate(sizes.begin(), sizes.end(), 0LL) - d;
    const std::vector<long long> ones(sizes.size(), 1);
    return detail::make("af", Direction::LowerBoundOnNonzeros,
                        bins::min_product({sizes, ones, total}));
}

inline BoundResult generalized_af_nonzeros(const std::vector<long long>& sizes,
                                           const std::vector<long long>& prefills, long long d) {
    detail::check_sizes(sizes);
    if (prefills.size() != sizes.size()) throw DomainError("prefill count mismatch");
    long long slack = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (prefills[i] < 1 || prefills[i] > sizes[i])
            throw DomainError("prefills must satisfy 1 <= b_i <= a_i");
        slack += sizes[i] - prefills[i];
    }
    if (d < 0 || d > slack)
        return BoundResult::inapplicable(
            "gaf", Direction::LowerBoundOnNonzeros,
            "hypothesis 0 <= deg f <= sum (a_i - b_i) violated");
    const long long total = std::accumulate(sizes.begin(), sizes.end(), 0LL) - d;
    return detail::make("gaf", Direction::LowerBoundOnNonzeros,
                        bins::min_product({sizes, prefills, total}));
}

// #A * sum d_i / a_i; exact because #A is the product of the a_i.
inline BoundResult schwartz_zeros(const std::vector<long long>& sizes,
                                  const std::vector<long long>& chain) {
    detail::check_sizes(sizes);
    if (chain.size() != sizes.size()) throw DomainError("chain length mismatch");
    Big value = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (chain[i] < 0) throw DomainError("chain degrees must be non-negative");
        Big partial = chain[i];
        for (std::size_t j = 0; j < sizes.size(); ++j)
            if (j != i) partial *= sizes[j];
        value += partial;
    }
    return detail::make("schwartz", Direction::UpperBoundOnZeros, value);
}

inline BoundResult sz_zeros(const std::vector<long long>& sizes, long long d) {
    detail::check_sizes(sizes);
    if (!std::is_sorted(sizes.rbegin(), sizes.rend()))
        throw DomainError("sizes must be non-increasing");
    if (d < 0) throw DomainError("degree must be non-negative");
    Big value = d;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) value *= sizes[i];
    return detail::make("sz", Direction::UpperBoundOnZeros, value);
}

inline BoundResult dmlz_zeros(long long s, int n, long long d) {
    if (s < 1 || n < 1) throw DomainError("need s >= 1 and n >= 1");
    if (d < 0) throw DomainError("degree cap must be non-negative");
    if (d >= s)
        return BoundResult::inapplicable("dmlz", Direction::UpperBoundOnZeros,
                                         "hypothesis d < #S violated");
    const Big value = big_pow(s, n) - big_pow(s - d, n);
    return detail::make("dmlz", Direction::UpperBoundOnZeros, value);
}

inline BoundResult generalized_dmlz_nonzeros(const std::vector<long long>& sizes,
                                             const std::vector<long long>& dvec) {
    detail::check_sizes(sizes);
    if (dvec.size() != sizes.size()) throw DomainError("degree vector length mismatch");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (dvec[i] < 1 || dvec[i] >= sizes[i])
            return BoundResult::inapplicable("gdmlz", Direction::LowerBoundOnNonzeros,
                                             "hypothesis 1 <= d_i < a_i violated");
    Big value = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) value *= sizes[i] - dvec[i];
    return detail::make("gdmlz", Direction::LowerBoundOnNonzeros, value);
}

// Minimum weight of GRM_d(n,q): (q-b) q^(n-a-1) where d = a(q-1)+b with
// 0 < b <= q-1.  Cross-checked against the balls-in-bins value.
inline BoundResult klp_min_weight(int n, long long q, long long d) {
    if (n < 1 || q < 2) throw DomainError("need n >= 1 and q >= 2");
    if (d < 1 || d > static_cast<long long>(n) * (q - 1))
        throw DomainError("order out of range 1 <= d <= n(q-1)");
    const long long a = (d - 1) / (q - 1);
    const long long b = d - a * (q - 1);
    const Big value = Big(q - b) * big_pow(q, static_cast<std::uint64_t>(n - a - 1));
    const std::vector<long long> sizes(n, q), ones(n, 1);
    const Big af = bins::min_product({sizes, ones, static_cast<long long>(n) * q - d});
    if (value != af) throw BoundViolation("KLP closed form disagrees with balls-in-bins");
    return detail::make("klp", Direction::LowerBoundOnNonzeros, value);
}

inline BoundResult mult_schwartz_bound(const std::vector<long long>& sizes,
                                       const std::vector<long long>& chain) {
    BoundResult r = schwartz_zeros(sizes, chain);
    r.theorem = "mult-schwartz";
    r.direction = Direction::UpperBoundOnMultiplicitySum;
    return r;
}

inline BoundResult mult_gsz_bound(const std::vector<long long>& sizes, long long d) {
    BoundResult r = sz_zeros(sizes, d);
    r.theorem = "mult-gsz";
    r.direction = Direction::UpperBoundOnMultiplicitySum;
    return r;
}

}  // namespace gridpoly::bounds

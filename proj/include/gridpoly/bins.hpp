#pragma once

// Balls in prefilled bins: the minimum of prod y_i over integer
// distributions b_i <= y_i <= a_i with sum y_i = N, plus closed forms
// and a brute-force oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "gridpoly/common.hpp"

namespace gridpoly::bins {

struct BinProfile {
    std::vector<long long> caps;      // a_i, each >= 1
    std::vector<long long> prefills;  // b_i, 1 <= b_i <= a_i
    long long total = 0;              // N
};

struct Distribution {
    std::vector<long long> counts;
};

inline void validate_profile(const BinProfile& p) {
    if (p.caps.empty()) throw DomainError("bin profile needs at least one bin");
    if (p.prefills.size() != p.caps.size())
        throw DomainError("prefill count must match capacity count");
    for (std::size_t i = 0; i < p.caps.size(); ++i) {
        if (p.prefills[i] < 1 || p.prefills[i] > p.caps[i])
            throw DomainError("prefills must satisfy 1 <= b_i <= a_i");
    }
}

inline long long caps_sum(const BinProfile& p) {
    return std::accumulate(p.caps.begin(), p.caps.end(), 0LL);
}

inline long long prefills_sum(const BinProfile& p) {
    return std::accumulate(p.prefills.begin(), p.prefills.end(), 0LL);
}

namespace detail {

inline bool caps_product_fits_u64(const std::vector<long long>& caps) {
    unsigned __int128 prod = 1;
    for (long long a : caps) {
        prod *= static_cast<unsigned __int128>(a);
        if (prod > (static_cast<unsigned __int128>(1) << 62)) return false;
    }
    return true;
}

// dp[s - sum_b] = min product over distributions with sum s, for
// s in [sum_b, sum_a].  All values are positive products bounded by
// prod a_i, so Int=uint64_t is exact whenever that product fits.
template <class Int>
std::vector<Int> min_product_table_impl(const std::vector<long long>& caps,
                                        const std::vector<long long>& prefills) {
    long long lo = 0, hi = 0;
    std::vector<Int> cur{Int(1)};
    for (std::size_t i = 0; i < caps.size(); ++i) {
        const long long nlo = lo + prefills[i], nhi = hi + caps[i];
        std::vector<Int> next(static_cast<std::size_t>(nhi - nlo + 1), Int(0));
        for (long long s = lo; s <= hi; ++s) {
            const Int base = cur[static_cast<std::size_t>(s - lo)];
            if (base == Int(0)) continue;
            for (long long y = prefills[i]; y <= caps[i]; ++y) {
                Int cand = base * Int(static_cast<std::uint64_t>(y));
                Int& slot = next[static_cast<std::size_t>(s + y - nlo)];
                if (slot == Int(0) || cand < slot) slot = cand;
            }
        }
        cur = std::move(next);
        lo = nlo;
        hi = nhi;
    }
    return cur;
}

}  // namespace detail

// Exact DP table of m(a; b; N) for every total N in [sum b_i, sum a_i],
// indexed by N - sum b_i.
inline std::vector<Big> min_product_table(const std::vector<long long>& caps,
                                          const std::vector<long long>& prefills) {
    BinProfile p{caps, prefills, 0};
    validate_profile(p);
    if (detail::caps_product_fits_u64(caps)) {
        auto t = detail::min_product_table_impl<std::uint64_t>(caps, prefills);
        return std::vector<Big>(t.begin(), t.end());
    }
    return detail::min_product_table_impl<Big>(caps, prefills);
}

// Greedy distribution: start from the prefills, then fill bins left to
// right.  Minimizing only when caps and prefills are both non-increasing.
inline Distribution greedy_distribution(const BinProfile& p) {
    validate_profile(p);
    if (p.total > caps_sum(p)) throw InfeasibleError("total exceeds sum of capacities");
    Distribution d{p.prefills};
    long long rem = p.total - prefills_sum(p);
    for (std::size_t i = 0; i < d.counts.size() && rem > 0; ++i) {
        const long long add = std::min(rem, p.caps[i] - d.counts[i]);
        d.counts[i] += add;
        rem -= add;
    }
    return d;
}

inline Big min_product(const BinProfile& p) {
    validate_profile(p);
    if (p.total > caps_sum(p)) throw InfeasibleError("total exceeds sum of capacities");
    Big prefill_product = 1;
    for (long long b : p.prefills) prefill_product *= b;
    if (p.total < prefills_sum(p)) return prefill_product;  // prefilled convention

    const bool caps_sorted = std::is_sorted(p.caps.rbegin(), p.caps.rend());
    const bool prefills_sorted = std::is_sorted(p.prefills.rbegin(), p.prefills.rend());
    if (caps_sorted && prefills_sorted) {
        Big prod = 1;
        for (long long y : greedy_distribution(p).counts) prod *= y;
        return prod;
    }
    const auto table = min_product_table(p.caps, p.prefills);
    return table[static_cast<std::size_t>(p.total - prefills_sum(p))];
}

// m(a,...,a; N) for equal capacities a >= 2: (r+1)*a^floor((N-n)/(a-1))
// with r = (N-n) mod (a-1).
inline Big min_product_closed_equal(long long a, int n, long long N) {
    if (a < 2) throw DomainError("equal-capacity closed form needs a >= 2");
    if (n < 1) throw DomainError("need at least one bin");
    if (N < n || N > static_cast<long long>(n) * a)
        throw DomainError("total out of range n <= N <= n*a");
    const long long r = (N - n) % (a - 1);
    const long long q = (N - n) / (a - 1);
    return Big(r + 1) * big_pow(a, static_cast<std::uint64_t>(q));
}

// m(a_1,...,a_n; N) for non-increasing capacities via the greedy split
// N - n = sum_{i<=j}(a_i - 1) + r with 0 <= r < a_{j+1}.
inline Big min_product_structured(const std::vector<long long>& caps, long long N) {
    if (caps.empty()) throw DomainError("need at least one bin");
    if (!std::is_sorted(caps.rbegin(), caps.rend()))
        throw DomainError("capacities must be non-increasing");
    for (long long a : caps)
        if (a < 1) throw DomainError("capacities must be positive");
    const long long n = static_cast<long long>(caps.size());
    const long long sum = std::accumulate(caps.begin(), caps.end(), 0LL);
    if (N < n || N > sum) throw DomainError("total out of range n <= N <= sum a_i");

    long long r = N - n;
    std::size_t j = 0;
    while (j < caps.size() && r >= caps[j]) {
        r -= caps[j] - 1;
        ++j;
    }
    Big prod = r + 1;
    for (std::size_t i = 0; i < j; ++i) prod *= caps[i];
    return prod;
}

// Enumerates every feasible distribution in lexicographic order and
// returns the minimum product with the first (hence lexicographically
// smallest) argmin.
inline std::pair<Big, Distribution> brute_force_min_product(
    const BinProfile& p, std::uint64_t cap = kDefaultEnumCap) {
    validate_profile(p);
    if (p.total > caps_sum(p)) throw InfeasibleError("total exceeds sum of capacities");
    if (p.total < prefills_sum(p))
        throw DomainError("brute force needs sum b_i <= N <= sum a_i");

    unsigned __int128 count = 1;
    for (std::size_t i = 0; i < p.caps.size(); ++i) {
        count *= static_cast<unsigned __int128>(p.caps[i] - p.prefills[i] + 1);
        if (count > cap) throw CapExceeded("distribution enumeration exceeds cap");
    }

    const std::size_t n = p.caps.size();
    std::vector<long long> suffix_min(n + 1, 0), suffix_max(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        suffix_min[i] = suffix_min[i + 1] + p.prefills[i];
        suffix_max[i] = suffix_max[i + 1] + p.caps[i];
    }

    Big best = -1;
    std::vector<long long> best_counts, counts(n);
    auto rec = [&](auto&& self, std::size_t i, long long remaining, const Big& prod) -> void {
        if (i == n) {
            if (best < 0 || prod < best) {
                best = prod;
                best_counts = counts;
            }
            return;
        }
        for (long long y = p.prefills[i]; y <= p.caps[i]; ++y) {
            const long long rest = remaining - y;
            if (rest < suffix_min[i + 1] || rest > suffix_max[i + 1]) continue;
            counts[i] = y;
            self(self, i + 1, rest, prod * y);
        }
    };
    rec(rec, 0, p.total, Big(1));
    return {best, Distribution{std::move(best_counts)}};
}

// True iff the minimum equals the forced prefill product; by the
// saturation lemma this happens exactly when N <= sum b_i.
inline bool saturation_test(const BinProfile& p) {
    Big prefill_product = 1;
    for (long long b : p.prefills) prefill_product *= b;
    return min_product(p) == prefill_product;
}

}  // namespace gridpoly::bins

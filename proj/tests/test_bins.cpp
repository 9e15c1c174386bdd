#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "gridpoly/bins.hpp"

using namespace gridpoly;
using namespace gridpoly::bins;

namespace {

// Independent reference: plain nested enumeration of all distributions,
// no pruning, no shared code with the library implementation.
long long reference_min_product(const std::vector<long long>& caps,
                                const std::vector<long long>& prefills, long long total) {
    std::vector<long long> y(caps.size());
    long long best = -1;
    auto rec = [&](auto&& self, std::size_t i, long long sum, long long prod) -> void {
        if (i == caps.size()) {
            if (sum == total && (best < 0 || prod < best)) best = prod;
            return;
        }
        for (long long v = prefills[i]; v <= caps[i]; ++v) self(self, i + 1, sum + v, prod * v);
    };
    rec(rec, 0, 0, 1);
    return best;
}

}  // namespace

TEST_CASE("min_product matches the worked example", "[bins]") {
    BinProfile p{{4, 3}, {1, 2}, 4};
    REQUIRE(min_product(p) == 3);
    // The greedy distribution is not optimal here: it fills bin 1 first.
    Distribution g = greedy_distribution(p);
    REQUIRE(g.counts == std::vector<long long>{2, 2});
    Big gp = 1;
    for (long long v : g.counts) gp *= v;
    REQUIRE(gp == 4);
}

TEST_CASE("min_product basic values", "[bins]") {
    REQUIRE(min_product({{3, 3}, {1, 1}, 6}) == 9);  // all bins full
    REQUIRE(reference_min_product({3, 3}, {1, 1}, 4) == 3);
    REQUIRE(min_product({{3, 3}, {1, 1}, 4}) == 3);
}

TEST_CASE("min_product degenerate totals", "[bins]") {
    // Fewer balls than prefills: the prefill product, by convention.
    REQUIRE(min_product({{4, 3}, {1, 2}, 1}) == 2);
    REQUIRE(min_product({{4, 3}, {1, 2}, -7}) == 2);
    // Unit prefills with N < n give 1.
    REQUIRE(min_product({{5, 5, 5}, {1, 1, 1}, 2}) == 1);
    REQUIRE(min_product({{5, 5, 5}, {1, 1, 1}, 0}) == 1);
}

TEST_CASE("min_product rejects invalid profiles", "[bins]") {
    REQUIRE_THROWS_AS(min_product({{}, {}, 0}), DomainError);
    REQUIRE_THROWS_AS(min_product({{3, 3}, {0, 1}, 3}), DomainError);
    REQUIRE_THROWS_AS(min_product({{3, 3}, {1, 4}, 3}), DomainError);
    REQUIRE_THROWS_AS(min_product({{3, 3}, {1}, 3}), DomainError);
    REQUIRE_THROWS_AS(min_product({{3, 3}, {1, 1}, 7}), InfeasibleError);
}

TEST_CASE("closed form for equal capacities", "[bins]") {
    REQUIRE(min_product_closed_equal(3, 2, 4) == 3);
    REQUIRE(min_product_closed_equal(2, 3, 5) == 4);  // 2^(n-k) with k = 1
    REQUIRE(min_product_closed_equal(7, 4, 28) == Big(7) * 7 * 7 * 7);
    REQUIRE_THROWS_AS(min_product_closed_equal(1, 2, 2), DomainError);
    REQUIRE_THROWS_AS(min_product_closed_equal(3, 2, 1), DomainError);
    REQUIRE_THROWS_AS(min_product_closed_equal(3, 2, 7), DomainError);

    // Agreement with the DP for every admissible (a, n, N).
    for (long long a = 2; a <= 6; ++a)
        for (int n = 1; n <= 5; ++n) {
            std::vector<long long> caps(n, a), ones(n, 1);
            for (long long N = n; N <= a * n; ++N)
                REQUIRE(min_product_closed_equal(a, n, N) == min_product({caps, ones, N}));
        }

    // 2-bin case: m(2,...,2; 2n-k) = 2^(n-k).
    for (int n = 1; n <= 10; ++n)
        for (long long k = 0; k <= n; ++k)
            REQUIRE(min_product_closed_equal(2, n, 2LL * n - k) ==
                    big_pow(2, static_cast<std::uint64_t>(n - k)));
}

TEST_CASE("structured closed form for sorted capacities", "[bins]") {
    REQUIRE(min_product_structured({3, 3}, 5) == 6);
    REQUIRE(min_product_structured({5, 1}, 2) == 1);
    // m(q,q; s+2) = s+1 whenever s+1 <= q.
    for (long long q = 2; q <= 9; ++q)
        for (long long s = 0; s + 1 <= q; ++s)
            REQUIRE(min_product_structured({q, q}, s + 2) == s + 1);
    REQUIRE_THROWS_AS(min_product_structured({3, 4}, 5), DomainError);

    // Agreement with the DP over all non-increasing profiles, n <= 4, a_i <= 5.
    std::vector<long long> caps;
    auto sweep = [&](auto&& self, long long maxcap) -> void {
        if (!caps.empty()) {
            std::vector<long long> ones(caps.size(), 1);
            const long long lo = static_cast<long long>(caps.size());
            const long long hi = std::accumulate(caps.begin(), caps.end(), 0LL);
            for (long long N = lo; N <= hi; ++N)
                REQUIRE(min_product_structured(caps, N) == min_product({caps, ones, N}));
        }
        if (caps.size() == 4) return;
        for (long long a = 1; a <= maxcap; ++a) {
            caps.push_back(a);
            self(self, a);
            caps.pop_back();
        }
    };
    sweep(sweep, 5);
}

TEST_CASE("brute force oracle and witnesses", "[bins]") {
    auto [v1, w1] = brute_force_min_product({{4, 3}, {1, 2}, 4});
    REQUIRE(v1 == 3);
    REQUIRE(w1.counts == std::vector<long long>{1, 3});

    auto [v2, w2] = brute_force_min_product({{2, 2}, {1, 1}, 4});
    REQUIRE(v2 == 4);
    REQUIRE(w2.counts == std::vector<long long>{2, 2});

    auto [v3, w3] = brute_force_min_product({{3, 3, 3}, {1, 1, 1}, 5});
    REQUIRE(v3 == 3);
    REQUIRE(w3.counts == std::vector<long long>{1, 1, 3});  // lexicographically least argmin

    REQUIRE_THROWS_AS(brute_force_min_product({{4, 3}, {1, 2}, 2}), DomainError);
    REQUIRE_THROWS_AS(brute_force_min_product({{9, 9, 9, 9}, {1, 1, 1, 1}, 10}, 100),
                      CapExceeded);
}

TEST_CASE("DP equals brute force on random profiles", "[bins]") {
    std::uint64_t state = 12345;
    auto next = [&] { return state = splitmix64(state); };
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + next() % 5;
        std::vector<long long> caps(n), prefills(n);
        for (std::size_t i = 0; i < n; ++i) {
            caps[i] = 1 + static_cast<long long>(next() % 7);
            prefills[i] = 1 + static_cast<long long>(next() % caps[i]);
        }
        const long long lo = std::accumulate(prefills.begin(), prefills.end(), 0LL);
        const long long hi = std::accumulate(caps.begin(), caps.end(), 0LL);
        const long long N = lo + static_cast<long long>(next() % (hi - lo + 1));
        BinProfile p{caps, prefills, N};
        auto [bf, witness] = brute_force_min_product(p);
        REQUIRE(min_product(p) == bf);
        Big prod = 1;
        long long sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(witness.counts[i] >= prefills[i]);
            REQUIRE(witness.counts[i] <= caps[i]);
            prod *= witness.counts[i];
            sum += witness.counts[i];
        }
        REQUIRE(sum == N);
        REQUIRE(prod == bf);
    }
}

TEST_CASE("splitting off the last bin never decreases the minimum", "[bins]") {
    // k * m(a', b'; N-k) >= m(a, b; N) for b_n <= k <= a_n and feasible N-k.
    std::uint64_t state = 777;
    auto next = [&] { return state = splitmix64(state); };
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + next() % 4;
        std::vector<long long> caps(n), prefills(n);
        for (std::size_t i = 0; i < n; ++i) {
            caps[i] = 1 + static_cast<long long>(next() % 6);
            prefills[i] = 1 + static_cast<long long>(next() % caps[i]);
        }
        std::vector<long long> caps_head(caps.begin(), caps.end() - 1);
        std::vector<long long> pre_head(prefills.begin(), prefills.end() - 1);
        const long long head_lo = std::accumulate(pre_head.begin(), pre_head.end(), 0LL);
        const long long head_hi = std::accumulate(caps_head.begin(), caps_head.end(), 0LL);
        for (long long k = prefills[n - 1]; k <= caps[n - 1]; ++k)
            for (long long rest = head_lo; rest <= head_hi; ++rest) {
                const long long N = rest + k;
                const Big lhs = Big(k) * min_product({caps_head, pre_head, rest});
                REQUIRE(lhs >= min_product({caps, prefills, N}));
            }
    }
}

TEST_CASE("saturation iff total at most prefill sum", "[bins]") {
    REQUIRE(saturation_test({{4, 3}, {1, 2}, 3}));
    REQUIRE_FALSE(saturation_test({{4, 3}, {1, 2}, 4}));
    REQUIRE(saturation_test({{2, 2}, {2, 2}, 4}));

    // Exhaustive over small profiles.
    for (long long a1 = 1; a1 <= 4; ++a1)
        for (long long a2 = 1; a2 <= 4; ++a2)
            for (long long b1 = 1; b1 <= a1; ++b1)
                for (long long b2 = 1; b2 <= a2; ++b2)
                    for (long long N = b1 + b2 - 2; N <= a1 + a2; ++N)
                        REQUIRE(saturation_test({{a1, a2}, {b1, b2}, N}) == (N <= b1 + b2));
}

TEST_CASE("min_product table covers all totals", "[bins]") {
    const std::vector<long long> caps{4, 3, 2}, prefills{1, 2, 1};
    const auto table = min_product_table(caps, prefills);
    REQUIRE(table.size() == static_cast<std::size_t>(9 - 4 + 1));
    for (long long N = 4; N <= 9; ++N) {
        REQUIRE(table[static_cast<std::size_t>(N - 4)] == min_product({caps, prefills, N}));
        REQUIRE(table[static_cast<std::size_t>(N - 4)] ==
                reference_min_product(caps, prefills, N));
    }
}

TEST_CASE("big products stay exact", "[bins]") {
    // 21 bins of capacity 9: the full product exceeds 64 bits.
    std::vector<long long> caps(21, 9), ones(21, 1);
    const long long N = 21 * 9;
    const Big full = big_pow(9, 21);
    REQUIRE(full > Big(std::numeric_limits<std::uint64_t>::max()));
    REQUIRE(min_product({caps, ones, N}) == full);
    REQUIRE(min_product({caps, ones, N - 1}) == full / 9 * 8);
}

#pragma once

// Generalized Reed-Muller and (generalized) affine grid codes: monomial
// bases, generator matrices, encoding, and minimum distance by formula and
// by brute force over the message space.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "gridpoly/bins.hpp"
#include "gridpoly/common.hpp"
#include "gridpoly/poly.hpp"

namespace gridpoly::codes {

enum class Kind { GRM, AGC, GAGC };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::GRM: return "grm";
        case Kind::AGC: return "agc";
        case Kind::GAGC: return "gagc";
    }
    return "?";
}

// Evaluation code of the polynomials with deg_{t_i} f <= a_i - b_i and
// deg f <= order, on a Condition-(D) grid.
struct CodeSpec {
    Kind kind;
    GridSpec grid;
    long long order;
    std::vector<long long> prefills;

    static CodeSpec grm(const Ring& field, int nvars, long long order) {
        if (!field.is_field()) throw DomainError("Reed-Muller codes need a field");
        return make(Kind::GRM, GridSpec::full(field, nvars), order,
                    std::vector<long long>(nvars, 1));
    }

    static CodeSpec agc(GridSpec grid, long long order) {
        if (!grid.ring().is_field()) throw DomainError("affine grid codes need a field");
        const std::vector<long long> ones(grid.nvars(), 1);
        return make(Kind::AGC, std::move(grid), order, ones);
    }

    static CodeSpec gagc(GridSpec grid, long long order, std::vector<long long> prefills) {
        return make(Kind::GAGC, std::move(grid), order, std::move(prefills));
    }

private:
    static CodeSpec make(Kind kind, GridSpec grid, long long order,
                         std::vector<long long> prefills) {
        if (!grid.condition_d_all())
            throw DomainError("code grid must satisfy Condition (D)");
        const auto sizes = grid.sizes();
        if (prefills.size() != sizes.size()) throw DomainError("prefill count mismatch");
        long long slack = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (prefills[i] < 1 || prefills[i] > sizes[i])
                throw DomainError("prefills must satisfy 1 <= b_i <= a_i");
            slack += sizes[i] - prefills[i];
        }
        if (order < 0 || order > slack)
            throw DomainError("order out of range 0 <= d <= sum (a_i - b_i)");
        return CodeSpec{kind, std::move(grid), order, std::move(prefills)};
    }
};

// All exponent vectors with i_j <= a_j - b_j and |I| <= d, in
// (total degree, t1-major) order.
inline std::vector<Monomial> monomial_basis(const CodeSpec& spec) {
    const auto sizes = spec.grid.sizes();
    const int n = spec.grid.nvars();
    std::vector<Monomial> basis;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, int var, long long degree_left) -> void {
        if (var == n) {
            basis.push_back(cur);
            return;
        }
        const long long cap = std::min<long long>(sizes[var] - spec.prefills[var], degree_left);
        for (long long e = 0; e <= cap; ++e) {
            cur[var] = static_cast<std::uint32_t>(e);
            self(self, var + 1, degree_left - e);
        }
        cur[var] = 0;
    };
    rec(rec, 0, spec.order);
    std::sort(basis.begin(), basis.end(), TermOrder{});
    return basis;
}

struct GeneratorMatrix {
    std::vector<Monomial> basis;               // row labels
    std::uint64_t ncols = 0;                   // #A, columns in grid order
    std::vector<std::vector<Elem>> rows;       // evaluations of each basis monomial
};

inline GeneratorMatrix generator_matrix(const CodeSpec& spec,
                                        std::uint64_t cap = kDefaultEnumCap) {
    GeneratorMatrix g;
    g.basis = monomial_basis(spec);
    g.ncols = spec.grid.point_count();
    if (g.ncols > cap) throw CapExceeded("grid enumeration exceeds cap");
    const Ring& ring = spec.grid.ring();
    g.rows.reserve(g.basis.size());
    for (const auto& m : g.basis) {
        std::vector<Elem> row;
        row.reserve(g.ncols);
        spec.grid.for_each_point([&](const std::vector<Elem>& pt) {
            Elem v = ring.one();
            for (int i = 0; i < spec.grid.nvars(); ++i)
                if (m[i]) v = ring.mul(v, ring.pow(pt[i], m[i]));
            row.push_back(v);
        });
        g.rows.push_back(std::move(row));
    }
    return g;
}

inline std::vector<Elem> encode(const Ring& ring, const GeneratorMatrix& g,
                                std::span<const Elem> message) {
    if (message.size() != g.rows.size()) throw DomainError("message length mismatch");
    std::vector<Elem> word(g.ncols, 0);
    for (std::size_t j = 0; j < message.size(); ++j) {
        if (message[j] == 0) continue;
        for (std::uint64_t c = 0; c < g.ncols; ++c)
            word[c] = ring.add(word[c], ring.mul(message[j], g.rows[j][c]));
    }
    return word;
}

// Theorem-of-record closed form for AGC over a sorted grid; used as an
// internal cross-check of the balls-in-bins value.
inline Big lrmv_min_weight(std::vector<long long> sizes, long long d) {
    std::sort(sizes.rbegin(), sizes.rend());
    long long slack = 0;
    for (long long a : sizes) slack += a - 1;
    if (d >= slack) return 1;
    if (d == 0) {
        Big all = 1;
        for (long long a : sizes) all *= a;
        return all;
    }
    // d = sum_{i=k+1..n}(a_i - 1) + l with 1 <= l <= a_k - 1.
    long long rest = d;
    std::size_t k = sizes.size();
    while (k >= 1) {
        const long long tail = rest - (sizes[k - 1] - 1);
        if (tail <= 0) break;
        rest = tail;
        --k;
    }
    const long long l = rest;
    Big w = sizes[k - 1] - l;
    for (std::size_t i = 0; i + 1 < k; ++i) w *= sizes[i];
    return w;
}

inline Big min_weight_formula(const CodeSpec& spec) {
    const auto sizes = spec.grid.sizes();
    const long long total = std::accumulate(sizes.begin(), sizes.end(), 0LL) - spec.order;
    const Big w = bins::min_product({sizes, spec.prefills, total});
    const bool unit_prefills =
        std::all_of(spec.prefills.begin(), spec.prefills.end(), [](long long b) { return b == 1; });
    if (unit_prefills && lrmv_min_weight(sizes, spec.order) != w)
        throw BoundViolation("piecewise minimum-weight form disagrees with balls-in-bins");
    return w;
}

struct BruteForceResult {
    std::uint64_t weight = 0;
    std::vector<Elem> message;   // first minimizing message in enumeration order
    std::vector<Elem> codeword;
};

// Walks the message space as an odometer (digit for basis monomial 0
// varies fastest), updating one row multiple per digit change, so the
// scan costs O(#messages * #A).  GF(2) uses packed words.
inline BruteForceResult min_weight_bruteforce(const CodeSpec& spec,
                                              std::uint64_t cap = kDefaultEnumCap) {
    const Ring& ring = spec.grid.ring();
    const GeneratorMatrix g = generator_matrix(spec, cap);
    const std::uint64_t card = ring.cardinality();
    const std::size_t k = g.basis.size();

    Big space = 1;
    for (std::size_t i = 0; i < k; ++i) {
        space *= card;
        if (space > cap) throw CapExceeded("message enumeration exceeds cap");
    }
    const std::uint64_t total = space.convert_to<std::uint64_t>();

    BruteForceResult best;
    best.weight = g.ncols + 1;
    std::vector<Elem> digits(k, 0);

    if (card == 2 && g.ncols <= 64) {
        std::vector<std::uint64_t> row_masks(k, 0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::uint64_t c = 0; c < g.ncols; ++c)
                if (g.rows[j][c]) row_masks[j] |= std::uint64_t{1} << c;
        std::uint64_t word = 0;
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            std::size_t j = 0;
            while (true) {  // binary odometer: flip digit j, carry on 1->0
                word ^= row_masks[j];
                digits[j] ^= 1u;
                if (digits[j] == 1) break;
                ++j;
            }
            const auto w = static_cast<std::uint64_t>(std::popcount(word));
            if (w < best.weight) {
                best.weight = w;
                best.message = digits;
                best.codeword.assign(g.ncols, 0);
                for (std::uint64_t c = 0; c < g.ncols; ++c)
                    if (word & (std::uint64_t{1} << c)) best.codeword[c] = 1;
            }
        }
        return best;
    }

    std::vector<Elem> word(g.ncols, 0);
    std::uint64_t weight = 0;
    auto apply_digit_change = [&](std::size_t j, Elem from, Elem to) {
        const Elem delta = ring.sub(to, from);
        for (std::uint64_t c = 0; c < g.ncols; ++c) {
            const Elem was = word[c];
            const Elem now = ring.add(was, ring.mul(delta, g.rows[j][c]));
            word[c] = now;
            weight += (now != 0);
            weight -= (was != 0);
        }
    };
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::size_t j = 0;
        while (true) {
            const Elem from = digits[j];
            const Elem to = (from + 1 == card) ? 0 : from + 1;
            apply_digit_change(j, from, static_cast<Elem>(to));
            digits[j] = static_cast<Elem>(to);
            if (to != 0) break;
            ++j;
        }
        if (weight < best.weight) {
            best.weight = weight;
            best.message = digits;
            best.codeword = word;
        }
    }
    return best;
}

// Weight distribution (reported, never asserted): weight -> count over
// all nonzero codewords.
inline std::map<std::uint64_t, std::uint64_t> weight_distribution(
    const CodeSpec& spec, std::uint64_t cap = kDefaultEnumCap) {
    const Ring& ring = spec.grid.ring();
    const GeneratorMatrix g = generator_matrix(spec, cap);
    const std::uint64_t card = ring.cardinality();
    const std::size_t k = g.basis.size();
    Big space = 1;
    for (std::size_t i = 0; i < k; ++i) {
        space *= card;
        if (space > cap) throw CapExceeded("message enumeration exceeds cap");
    }
    const std::uint64_t total = space.convert_to<std::uint64_t>();
    std::map<std::uint64_t, std::uint64_t> dist;
    std::vector<Elem> digits(k, 0), word(g.ncols, 0);
    std::uint64_t weight = 0;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::size_t j = 0;
        while (true) {
            const Elem from = digits[j];
            const Elem to = (from + 1 == card) ? 0 : from + 1;
            const Elem delta = ring.sub(static_cast<Elem>(to), from);
            for (std::uint64_t c = 0; c < g.ncols; ++c) {
                const Elem was = word[c];
                const Elem now = ring.add(was, ring.mul(delta, g.rows[j][c]));
                word[c] = now;
                weight += (now != 0);
                weight -= (was != 0);
            }
            digits[j] = static_cast<Elem>(to);
            if (to != 0) break;
            ++j;
        }
        ++dist[weight];
    }
    return dist;
}

// Row rank over a field by Gaussian elimination.
inline std::uint64_t matrix_rank_field(const Ring& field, const GeneratorMatrix& g) {
    if (!field.is_field()) throw DomainError("rank computation needs a field");
    std::vector<std::vector<Elem>> m = g.rows;
    std::uint64_t rank = 0;
    std::uint64_t col = 0;
    for (std::size_t row = 0; row < m.size() && col < g.ncols; ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        const Elem inv = field.inverse(m[row][col]);
        for (std::uint64_t c = col; c < g.ncols; ++c) m[row][c] = field.mul(m[row][c], inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Elem factor = m[r][col];
            for (std::uint64_t c = col; c < g.ncols; ++c)
                m[r][c] = field.sub(m[r][c], field.mul(factor, m[row][c]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace gridpoly::codes

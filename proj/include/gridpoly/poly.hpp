#pragma once

// Sparse multivariate polynomials over a finite ring: degrees, evaluation,
// grid reduction, Hasse derivatives, multiplicities, line restriction and
// the extremal polylinear construction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gridpoly/bins.hpp"
#include "gridpoly/common.hpp"
#include "gridpoly/ring.hpp"

namespace gridpoly {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t monomial_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

struct LexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Basis/enumeration order: total degree ascending, then t1-major
// (lexicographically descending exponents), so degree-1 monomials come
// as t1, t2, ...
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class SparsePoly {
public:
    using TermMap = std::map<Monomial, Elem, LexLess>;

    SparsePoly(Ring ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {
        if (nvars < 0) throw DomainError("variable count must be non-negative");
    }

    static SparsePoly zero(Ring ring, int nvars) { return SparsePoly(std::move(ring), nvars); }

    static SparsePoly constant(Ring ring, int nvars, Elem c) {
        SparsePoly f(std::move(ring), nvars);
        f.add_term(Monomial(nvars, 0), c);
        return f;
    }

    static SparsePoly monomial(Ring ring, int nvars, Monomial m, Elem c) {
        SparsePoly f(std::move(ring), nvars);
        f.add_term(std::move(m), c);
        return f;
    }

    // t_var - root (var is 0-based)
    static SparsePoly linear_factor(Ring ring, int nvars, int var, Elem root) {
        SparsePoly f(ring, nvars);
        Monomial m(nvars, 0);
        m[var] = 1;
        f.add_term(m, ring.one());
        f.add_term(Monomial(nvars, 0), ring.neg(root));
        return f;
    }

    const Ring& ring() const { return ring_; }
    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, Elem c) {
        if (static_cast<int>(m.size()) != nvars_)
            throw DomainError("monomial length must equal the variable count");
        ring_.check(c);
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second = ring_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Elem coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    std::optional<int> total_degree() const {
        if (terms_.empty()) return std::nullopt;
        std::uint64_t best = 0;
        for (const auto& [m, c] : terms_) best = std::max(best, monomial_degree(m));
        return static_cast<int>(best);
    }

    // Degree in one variable; nullopt for the zero polynomial.
    std::optional<int> degree_in(int var) const {
        if (terms_.empty()) return std::nullopt;
        std::uint32_t best = 0;
        for (const auto& [m, c] : terms_) best = std::max(best, m[var]);
        return static_cast<int>(best);
    }

    SparsePoly operator-() const {
        SparsePoly r(ring_, nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_.neg(c));
        return r;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        require_compatible(a, b);
        SparsePoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        require_compatible(a, b);
        SparsePoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, a.ring_.neg(c));
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        require_compatible(a, b);
        SparsePoly r(a.ring_, a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(std::move(m), a.ring_.mul(ca, cb));
            }
        return r;
    }

    SparsePoly scaled(Elem c) const {
        SparsePoly r(ring_, nvars_);
        for (const auto& [m, v] : terms_) r.add_term(m, ring_.mul(v, c));
        return r;
    }

    bool operator==(const SparsePoly& o) const {
        return ring_ == o.ring_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Elem evaluate(std::span<const Elem> x) const {
        if (static_cast<int>(x.size()) != nvars_) throw DomainError("point dimension mismatch");
        for (Elem v : x) ring_.check(v);
        if (terms_.empty()) return 0;
        return eval_range(terms_.begin(), terms_.end(), 0, x);
    }

    Elem evaluate(const std::vector<Elem>& x) const {
        return evaluate(std::span<const Elem>(x.data(), x.size()));
    }

private:
    static void require_compatible(const SparsePoly& a, const SparsePoly& b) {
        if (a.ring_ != b.ring_) throw DomainError("mixed-ring operands");
        if (a.nvars_ != b.nvars_) throw DomainError("variable count mismatch");
    }

    // Horner in variable `var` over a range of terms sharing the exponents
    // of all earlier variables; lex order makes each group contiguous.
    Elem eval_range(TermMap::const_iterator begin, TermMap::const_iterator end, int var,
                    std::span<const Elem> x) const {
        if (var == nvars_) return begin->second;
        // Gather the groups (distinct exponent of `var`) in ascending order.
        std::vector<std::pair<std::uint32_t, std::pair<TermMap::const_iterator, TermMap::const_iterator>>>
            groups;
        for (auto it = begin; it != end;) {
            const std::uint32_t e = it->first[var];
            auto last = it;
            while (last != end && last->first[var] == e) ++last;
            groups.push_back({e, {it, last}});
            it = last;
        }
        Elem acc = 0;
        std::uint32_t prev_exp = 0;
        for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
            if (g != groups.rbegin()) acc = ring_.mul(acc, ring_.pow(x[var], prev_exp - g->first));
            acc = ring_.add(acc, eval_range(g->second.first, g->second.second, var + 1, x));
            prev_exp = g->first;
        }
        if (prev_exp > 0) acc = ring_.mul(acc, ring_.pow(x[var], prev_exp));
        return acc;
    }

    Ring ring_;
    int nvars_;
    TermMap terms_;
};

struct Degrees {
    std::optional<int> total;                 // nullopt encodes -infinity
    std::vector<std::optional<int>> per_var;  // likewise per variable
};

inline Degrees degrees(const SparsePoly& f) {
    Degrees d;
    d.total = f.total_degree();
    d.per_var.resize(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) d.per_var[i] = f.degree_in(i);
    return d;
}

// A finite grid A = A_1 x ... x A_n with cached Condition (D) status.
class GridSpec {
public:
    GridSpec(Ring ring, std::vector<CoordinateSet> sets)
        : ring_(std::move(ring)), sets_(std::move(sets)) {
        if (sets_.empty()) throw DomainError("grid needs at least one coordinate set");
        cond_d_.reserve(sets_.size());
        for (const auto& s : sets_) {
            for (Elem x : s.elems) ring_.check(x);
            cond_d_.push_back(check_condition_d(ring_, s));
        }
    }

    static GridSpec full(const Ring& ring, int nvars) {
        std::vector<CoordinateSet> sets(nvars, full_coordinate_set(ring));
        return GridSpec(ring, std::move(sets));
    }

    const Ring& ring() const { return ring_; }
    int nvars() const { return static_cast<int>(sets_.size()); }
    const std::vector<CoordinateSet>& sets() const { return sets_; }
    const CoordinateSet& set(int i) const { return sets_.at(i); }
    bool condition_d(int i) const { return cond_d_.at(i); }
    bool condition_d_all() const {
        return std::all_of(cond_d_.begin(), cond_d_.end(), [](bool b) { return b; });
    }

    std::vector<long long> sizes() const {
        std::vector<long long> s;
        s.reserve(sets_.size());
        for (const auto& a : sets_) s.push_back(static_cast<long long>(a.size()));
        return s;
    }

    std::uint64_t point_count() const {
        unsigned __int128 n = 1;
        for (const auto& s : sets_) {
            n *= s.size();
            if (n > std::numeric_limits<std::uint64_t>::max())
                throw DomainError("grid point count overflows");
        }
        return static_cast<std::uint64_t>(n);
    }

    // Deterministic grid order: odometer over per-coordinate indices with
    // the last coordinate varying fastest.
    template <class Fn>
    void for_each_point(Fn&& fn) const {
        const int n = nvars();
        std::vector<std::size_t> idx(n, 0);
        std::vector<Elem> pt(n);
        for (int i = 0; i < n; ++i) pt[i] = sets_[i].elems[0];
        for (;;) {
            fn(pt);
            int i = n - 1;
            while (i >= 0) {
                if (++idx[i] < sets_[i].size()) {
                    pt[i] = sets_[i].elems[idx[i]];
                    break;
                }
                idx[i] = 0;
                pt[i] = sets_[i].elems[0];
                --i;
            }
            if (i < 0) return;
        }
    }

    std::vector<Elem> point_at(std::uint64_t index) const {
        const int n = nvars();
        std::vector<Elem> pt(n);
        for (int i = n - 1; i >= 0; --i) {
            pt[i] = sets_[i].elems[index % sets_[i].size()];
            index /= sets_[i].size();
        }
        return pt;
    }

    bool operator==(const GridSpec& o) const {
        if (ring_ != o.ring_ || sets_.size() != o.sets_.size()) return false;
        for (std::size_t i = 0; i < sets_.size(); ++i)
            if (sets_[i].elems != o.sets_[i].elems) return false;
        return true;
    }

private:
    Ring ring_;
    std::vector<CoordinateSet> sets_;
    std::vector<bool> cond_d_;
};

// phi_i = prod_{x in A_i} (t_i - x), the monic vanishing polynomial of
// one coordinate set; returned as univariate coefficients (degree a_i).
inline std::vector<Elem> coordinate_vanishing_coeffs(const Ring& ring, const CoordinateSet& s) {
    std::vector<Elem> coeffs{ring.one()};
    for (Elem root : s.elems) {
        std::vector<Elem> next(coeffs.size() + 1, 0);
        const Elem neg_root = ring.neg(root);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            next[j + 1] = ring.add(next[j + 1], coeffs[j]);
            next[j] = ring.add(next[j], ring.mul(coeffs[j], neg_root));
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

inline SparsePoly phi_poly(const GridSpec& A, int var) {
    const auto coeffs = coordinate_vanishing_coeffs(A.ring(), A.set(var));
    SparsePoly f(A.ring(), A.nvars());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        Monomial m(A.nvars(), 0);
        m[var] = static_cast<std::uint32_t>(j);
        f.add_term(std::move(m), coeffs[j]);
    }
    return f;
}

struct ZeroCensus {
    std::uint64_t zeros = 0;
    std::uint64_t nonzeros = 0;
    std::optional<std::vector<std::vector<Elem>>> zero_points;
};

inline ZeroCensus zero_census(const SparsePoly& f, const GridSpec& A,
                              std::uint64_t cap = kDefaultEnumCap, bool collect_zeros = false) {
    if (f.ring() != A.ring()) throw DomainError("polynomial and grid rings differ");
    if (f.nvars() != A.nvars()) throw DomainError("variable count mismatch");
    if (A.point_count() > cap) throw CapExceeded("grid enumeration exceeds cap");
    ZeroCensus census;
    if (collect_zeros) census.zero_points.emplace();
    A.for_each_point([&](const std::vector<Elem>& pt) {
        if (f.evaluate(pt) == 0) {
            ++census.zeros;
            if (collect_zeros) census.zero_points->push_back(pt);
        } else {
            ++census.nonzeros;
        }
    });
    return census;
}

// The unique A-reduced polynomial congruent to f modulo the grid ideal,
// computed by successive exact division by the monic phi_i.
inline SparsePoly grid_reduce(const SparsePoly& f, const GridSpec& A) {
    if (f.ring() != A.ring()) throw DomainError("polynomial and grid rings differ");
    if (f.nvars() != A.nvars()) throw DomainError("variable count mismatch");
    const Ring& ring = f.ring();
    SparsePoly cur = f;
    for (int var = 0; var < A.nvars(); ++var) {
        const std::uint32_t a = static_cast<std::uint32_t>(A.set(var).size());
        const auto dv = cur.degree_in(var);
        if (!dv || static_cast<std::uint32_t>(*dv) < a) continue;
        const auto phi = coordinate_vanishing_coeffs(ring, A.set(var));
        // t^a = g(t) mod phi, with g = t^a - phi of degree < a.
        std::vector<Elem> g(a);
        for (std::uint32_t j = 0; j < a; ++j) g[j] = ring.neg(phi[j]);
        // Bucket terms by their exponent in `var` (exponent zeroed out).
        std::vector<SparsePoly::TermMap> buckets(static_cast<std::size_t>(*dv) + 1);
        for (const auto& [m, c] : cur.terms()) {
            Monomial key = m;
            const std::uint32_t e = key[var];
            key[var] = 0;
            buckets[e].emplace(std::move(key), c);
        }
        auto accumulate = [&](SparsePoly::TermMap& dst, const Monomial& m, Elem c) {
            if (c == 0) return;
            auto [it, inserted] = dst.emplace(m, c);
            if (!inserted) {
                it->second = ring.add(it->second, c);
                if (it->second == 0) dst.erase(it);
            }
        };
        for (std::uint32_t e = static_cast<std::uint32_t>(*dv); e >= a; --e) {
            auto terms = std::move(buckets[e]);
            buckets[e].clear();
            for (const auto& [m, c] : terms)
                for (std::uint32_t j = 0; j < a; ++j)
                    if (g[j] != 0) accumulate(buckets[e - a + j], m, ring.mul(c, g[j]));
        }
        SparsePoly next(ring, f.nvars());
        for (std::uint32_t e = 0; e < a && e < buckets.size(); ++e)
            for (const auto& [m, c] : buckets[e]) {
                Monomial full = m;
                full[var] = e;
                next.add_term(std::move(full), c);
            }
        cur = std::move(next);
    }
    return cur;
}

inline bool vanishes_on_grid(const SparsePoly& f, const GridSpec& A,
                             std::uint64_t cap = kDefaultEnumCap) {
    if (A.condition_d_all()) return grid_reduce(f, A).is_zero();
    return zero_census(f, A, cap).nonzeros == 0;  // no fast path without Condition (D)
}

// D^J with D^J(t^I) = (I choose J) t^(I-J); binomials are integers mapped
// into the ring.
inline SparsePoly hasse_derivative(const SparsePoly& f, const Monomial& j) {
    if (static_cast<int>(j.size()) != f.nvars())
        throw DomainError("derivative multi-index length mismatch");
    const Ring& ring = f.ring();
    SparsePoly r(ring, f.nvars());
    for (const auto& [m, c] : f.terms()) {
        bool ok = true;
        Big binom = 1;
        Monomial target(f.nvars());
        for (int v = 0; v < f.nvars(); ++v) {
            if (j[v] > m[v]) {
                ok = false;
                break;
            }
            target[v] = m[v] - j[v];
            binom *= binom_big(m[v], j[v]);
        }
        if (!ok) continue;
        r.add_term(std::move(target), ring.mul(c, ring.from_big(binom)));
    }
    return r;
}

// f(t + x), expanded with binomial coefficients; the coefficient of t^J
// is D^J(f)(x).
inline SparsePoly taylor_shift(const SparsePoly& f, std::span<const Elem> x) {
    if (static_cast<int>(x.size()) != f.nvars()) throw DomainError("point dimension mismatch");
    const Ring& ring = f.ring();
    SparsePoly r(ring, f.nvars());
    Monomial partial(f.nvars(), 0);
    for (const auto& [m, c] : f.terms()) {
        auto expand = [&](auto&& self, int v, Elem coeff) -> void {
            if (v == f.nvars()) {
                r.add_term(partial, coeff);
                return;
            }
            Elem power = ring.one();  // x_v^(e-j), built from j = e downward
            for (std::uint32_t jj = m[v] + 1; jj-- > 0;) {
                partial[v] = jj;
                const Elem b = ring.from_big(binom_big(m[v], jj));
                self(self, v + 1, ring.mul(coeff, ring.mul(b, power)));
                if (jj > 0) power = ring.mul(power, x[v]);
            }
            partial[v] = 0;
        };
        expand(expand, 0, c);
    }
    return r;
}

inline SparsePoly taylor_shift(const SparsePoly& f, const std::vector<Elem>& x) {
    return taylor_shift(f, std::span<const Elem>(x.data(), x.size()));
}

// Multiplicity of f at x: least |J| with D^J(f)(x) != 0, read off as the
// lowest total degree in f(t + x).  nullopt (infinity) for f = 0.
inline std::optional<std::uint64_t> multiplicity(const SparsePoly& f, const std::vector<Elem>& x) {
    if (f.is_zero()) return std::nullopt;
    if (f.evaluate(x) != 0) return 0;
    const SparsePoly shifted = taylor_shift(f, x);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [m, c] : shifted.terms()) best = std::min(best, monomial_degree(m));
    return best;
}

inline std::uint64_t multiplicity_sum(const SparsePoly& f, const GridSpec& A,
                                      std::uint64_t cap = kDefaultEnumCap) {
    if (f.is_zero()) throw DomainError("multiplicity sum of the zero polynomial is infinite");
    if (A.point_count() > cap) throw CapExceeded("grid enumeration exceeds cap");
    std::uint64_t sum = 0;
    A.for_each_point([&](const std::vector<Elem>& pt) { sum += *multiplicity(f, pt); });
    return sum;
}

// The univariate polynomial f(a + t*b).
inline SparsePoly restrict_to_line(const SparsePoly& f, const std::vector<Elem>& a,
                                   const std::vector<Elem>& b) {
    if (static_cast<int>(a.size()) != f.nvars() || static_cast<int>(b.size()) != f.nvars())
        throw DomainError("line point/direction dimension mismatch");
    const Ring& ring = f.ring();
    const auto total = f.total_degree();
    std::vector<Elem> acc(total ? static_cast<std::size_t>(*total) + 1 : 1, 0);
    for (const auto& [m, c] : f.terms()) {
        std::vector<Elem> term{c};
        for (int v = 0; v < f.nvars(); ++v)
            for (std::uint32_t e = 0; e < m[v]; ++e) {
                std::vector<Elem> next(term.size() + 1, 0);
                for (std::size_t i = 0; i < term.size(); ++i) {
                    next[i] = ring.add(next[i], ring.mul(term[i], a[v]));
                    next[i + 1] = ring.add(next[i + 1], ring.mul(term[i], b[v]));
                }
                term = std::move(next);
            }
        for (std::size_t i = 0; i < term.size(); ++i) acc[i] = ring.add(acc[i], term[i]);
    }
    SparsePoly r(ring, 1);
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0) r.add_term({static_cast<std::uint32_t>(i)}, acc[i]);
    return r;
}

// Sharpness construction: realizes an argmin distribution y of
// m(a; b; sum a_i - d) as f = prod_i prod_{x in S_i} (t_i - x) with S_i the
// first a_i - y_i elements of A_i.  var_caps[i] = a_i - b_i.
inline SparsePoly extremal_polylinear(const GridSpec& A, const std::vector<long long>& var_caps,
                                      long long d) {
    const int n = A.nvars();
    if (static_cast<int>(var_caps.size()) != n) throw DomainError("cap count mismatch");
    const auto sizes = A.sizes();
    long long cap_sum = 0;
    std::vector<long long> prefills(n);
    for (int i = 0; i < n; ++i) {
        if (var_caps[i] < 0 || var_caps[i] > sizes[i] - 1)
            throw DomainError("per-variable caps must satisfy 0 <= cap_i <= a_i - 1");
        prefills[i] = sizes[i] - var_caps[i];
        cap_sum += var_caps[i];
    }
    if (d < 0 || d > cap_sum) throw DomainError("degree out of range 0 <= d <= sum caps");
    long long total = 0;
    for (long long s : sizes) total += s;
    const auto [value, dist] =
        bins::brute_force_min_product(bins::BinProfile{sizes, prefills, total - d});
    SparsePoly f = SparsePoly::constant(A.ring(), n, A.ring().one());
    for (int i = 0; i < n; ++i) {
        const long long roots = sizes[i] - dist.counts[i];
        for (long long r = 0; r < roots; ++r)
            f = f * SparsePoly::linear_factor(A.ring(), n, i, A.set(i).elems[r]);
    }
    return f;
}

// The leading-coefficient chain: f_n = f, d_i = deg_{t_i} f_i, and
// f_{i-1} is the coefficient of t_i^{d_i} in f_i.  Witnesses are
// f_1, ..., f_n (all nonzero).
struct LeadingChain {
    std::vector<int> degrees;          // d_1, ..., d_n
    std::vector<SparsePoly> witnesses; // f_1, ..., f_n
};

inline LeadingChain leading_coeff_chain(const SparsePoly& f) {
    if (f.is_zero()) throw DomainError("leading-coefficient chain of the zero polynomial");
    const int n = f.nvars();
    LeadingChain chain;
    chain.degrees.assign(n, 0);
    chain.witnesses.assign(n, SparsePoly::zero(f.ring(), n));
    SparsePoly cur = f;
    for (int var = n - 1; var >= 0; --var) {
        chain.witnesses[var] = cur;
        const int d = *cur.degree_in(var);
        chain.degrees[var] = d;
        SparsePoly next(f.ring(), n);
        for (const auto& [m, c] : cur.terms()) {
            if (m[var] != static_cast<std::uint32_t>(d)) continue;
            Monomial stripped = m;
            stripped[var] = 0;
            next.add_term(std::move(stripped), c);
        }
        cur = std::move(next);
    }
    return chain;
}

}  // namespace gridpoly

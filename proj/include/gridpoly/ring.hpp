#pragma once

// Finite commutative rings: prime fields GF(p), extension fields GF(p^k)
// with an explicit modulus, and Z/m.  Elements are canonical codes in
// [0, cardinality); for extension fields the code orders coefficient
// sequences (c_0, ..., c_{k-1}) lexicographically, c_0 = constant term.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "gridpoly/common.hpp"

namespace gridpoly {

using Elem = std::uint32_t;

namespace ring_detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Remainder of a by b over GF(p); b monic of positive degree; in-place on a.
inline void poly_mod_inplace(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                             std::uint64_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t cur = a[shift + i];
                std::uint64_t sub = lead * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool divides(const std::vector<std::uint32_t>& divisor,
                    const std::vector<std::uint32_t>& poly, std::uint64_t p) {
    std::vector<std::uint32_t> rem = poly;
    poly_mod_inplace(rem, divisor, p);
    return rem.empty();
}

}  // namespace ring_detail

// Lexicographically least monic irreducible of degree k over GF(p), where
// candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are ordered by the integer
// encoding sum c_i p^i.  Trial division by all monic factors of degree
// up to k/2.  Returned low-degree-first, length k+1.
inline std::vector<std::uint32_t> find_irreducible(std::uint64_t p, unsigned k,
                                                   std::uint64_t card_limit = kDefaultRingCardLimit) {
    if (!ring_detail::is_prime(p)) throw DomainError("characteristic must be prime");
    if (k < 1) throw DomainError("extension degree must be at least 1");
    Big card = big_pow(p, k);
    if (card > card_limit) throw DomainError("ring cardinality exceeds limit");
    const std::uint64_t n_candidates = card.convert_to<std::uint64_t>();

    for (std::uint64_t c = 0; c < n_candidates; ++c) {
        std::vector<std::uint32_t> cand(k + 1);
        std::uint64_t v = c;
        for (unsigned i = 0; i < k; ++i) {
            cand[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        cand[k] = 1;
        bool irreducible = true;
        for (unsigned d = 1; irreducible && 2 * d <= k; ++d) {
            const std::uint64_t nd = big_pow(p, d).convert_to<std::uint64_t>();
            for (std::uint64_t g = 0; g < nd; ++g) {
                std::vector<std::uint32_t> divisor(d + 1);
                std::uint64_t w = g;
                for (unsigned i = 0; i < d; ++i) {
                    divisor[i] = static_cast<std::uint32_t>(w % p);
                    w /= p;
                }
                divisor[d] = 1;
                if (ring_detail::divides(divisor, cand, p)) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return cand;
    }
    throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

class Ring {
public:
    enum class Kind { PrimeField, ExtensionField, Modular };

    static Ring prime_field(std::uint64_t p, std::uint64_t card_limit = kDefaultRingCardLimit) {
        if (!ring_detail::is_prime(p)) throw DomainError("GF(p) needs prime p");
        if (p > card_limit) throw DomainError("ring cardinality exceeds limit");
        return Ring(Kind::PrimeField, p, 1, {}, p);
    }

    static Ring extension_field(std::uint64_t p, unsigned k,
                                std::uint64_t card_limit = kDefaultRingCardLimit) {
        return extension_field(p, k, find_irreducible(p, k, card_limit), card_limit);
    }

    static Ring extension_field(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus,
                                std::uint64_t card_limit = kDefaultRingCardLimit) {
        if (!ring_detail::is_prime(p)) throw DomainError("GF(p^k) needs prime p");
        if (k < 1) throw DomainError("extension degree must be at least 1");
        Big card = big_pow(p, k);
        if (card > card_limit) throw DomainError("ring cardinality exceeds limit");
        if (modulus.size() != k + 1 || modulus[k] != 1)
            throw DomainError("modulus must be monic of degree k");
        for (auto c : modulus)
            if (c >= p) throw DomainError("modulus coefficients must lie in [0, p)");
        for (unsigned d = 1; 2 * d <= k; ++d) {
            const std::uint64_t nd = big_pow(p, d).convert_to<std::uint64_t>();
            for (std::uint64_t g = 0; g < nd; ++g) {
                std::vector<std::uint32_t> divisor(d + 1);
                std::uint64_t w = g;
                for (unsigned i = 0; i < d; ++i) {
                    divisor[i] = static_cast<std::uint32_t>(w % p);
                    w /= p;
                }
                divisor[d] = 1;
                if (ring_detail::divides(divisor, modulus, p))
                    throw DomainError("modulus is reducible over GF(p)");
            }
        }
        return Ring(Kind::ExtensionField, p, k, std::move(modulus),
                    card.convert_to<std::uint64_t>());
    }

    static Ring modular(std::uint64_t m, std::uint64_t card_limit = kDefaultRingCardLimit) {
        if (m < 2) throw DomainError("Z/m needs m >= 2");
        if (m > card_limit) throw DomainError("ring cardinality exceeds limit");
        return Ring(Kind::Modular, 0, 0, {}, m);
    }

    Kind kind() const { return data_->kind; }
    std::uint64_t cardinality() const { return data_->card; }
    bool is_field() const { return data_->kind != Kind::Modular; }
    std::uint64_t characteristic() const {
        return data_->kind == Kind::Modular ? data_->card : data_->p;
    }
    std::uint64_t prime() const { return data_->p; }
    unsigned ext_degree() const { return data_->k; }
    const std::vector<std::uint32_t>& modulus() const { return data_->modulus; }

    Elem zero() const { return 0; }
    Elem one() const { return data_->one; }

    void check(Elem x) const {
        if (x >= data_->card) throw DomainError("element code out of range for this ring");
    }

    Elem add(Elem x, Elem y) const {
        check(x);
        check(y);
        if (data_->add_table) return (*data_->add_table)[x * data_->card + y];
        return add_raw(x, y);
    }
    Elem neg(Elem x) const {
        check(x);
        if (data_->neg_table) return (*data_->neg_table)[x];
        return neg_raw(x);
    }
    Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
    Elem mul(Elem x, Elem y) const {
        check(x);
        check(y);
        if (data_->mul_table) return (*data_->mul_table)[x * data_->card + y];
        return mul_raw(x, y);
    }
    Elem pow(Elem x, std::uint64_t e) const {
        Elem r = one(), b = x;
        check(x);
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    bool is_unit(Elem x) const {
        check(x);
        if (data_->kind == Kind::Modular) return std::gcd<std::uint64_t>(x, data_->card) == 1;
        return x != 0;
    }

    // x = 0 or x*y = 0 for some y != 0; in a finite ring this is exactly
    // "not a unit".
    bool is_zero_divisor(Elem x) const { return !is_unit(x); }

    Elem inverse(Elem x) const {
        if (!is_unit(x)) throw DomainError("element is not a unit");
        if (data_->kind == Kind::Modular) {
            long long t = 0, new_t = 1;
            long long r = static_cast<long long>(data_->card), new_r = x;
            while (new_r != 0) {
                const long long q = r / new_r;
                t = std::exchange(new_t, t - q * new_t);
                r = std::exchange(new_r, r - q * new_r);
            }
            return static_cast<Elem>((t % static_cast<long long>(data_->card) +
                                      static_cast<long long>(data_->card)) %
                                     static_cast<long long>(data_->card));
        }
        return pow(x, data_->card - 2);
    }

    Elem from_int(long long v) const {
        const long long m = static_cast<long long>(characteristic());
        const long long r = ((v % m) + m) % m;
        if (data_->kind == Kind::ExtensionField) {
            std::vector<std::uint32_t> c(data_->k, 0);
            c[0] = static_cast<std::uint32_t>(r);
            return encode(c);
        }
        return static_cast<Elem>(r);
    }

    Elem from_big(const Big& v) const {
        const Big m = characteristic();
        Big r = v % m;
        if (r < 0) r += m;
        return from_int(r.convert_to<long long>());
    }

    // Canonical representative: digits low-degree-first for extension
    // fields, the single residue otherwise.
    std::vector<std::uint32_t> coeffs(Elem x) const {
        check(x);
        if (data_->kind != Kind::ExtensionField) return {x};
        return decode(x);
    }

    Elem from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (data_->kind != Kind::ExtensionField) {
            if (c.size() != 1) throw DomainError("expected a single residue");
            if (c[0] >= data_->card) throw DomainError("residue out of range");
            return c[0];
        }
        if (c.size() != data_->k) throw DomainError("coefficient sequence has wrong length");
        for (auto v : c)
            if (v >= data_->p) throw DomainError("coefficient out of range");
        return encode(c);
    }

    bool operator==(const Ring& o) const {
        return data_->kind == o.data_->kind && data_->p == o.data_->p && data_->k == o.data_->k &&
               data_->card == o.data_->card && data_->modulus == o.data_->modulus;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

private:
    struct Data {
        Kind kind;
        std::uint64_t p;  // characteristic for fields
        unsigned k;       // extension degree
        std::vector<std::uint32_t> modulus;
        std::uint64_t card;
        Elem one = 1;
        std::unique_ptr<std::vector<Elem>> add_table, mul_table, neg_table;
    };

    static constexpr std::uint64_t kTableLimit = 512;

    Ring(Kind kind, std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus,
         std::uint64_t card) {
        auto d = std::make_shared<Data>();
        d->kind = kind;
        d->p = p;
        d->k = k;
        d->modulus = std::move(modulus);
        d->card = card;
        data_ = d;  // published only after construction completes
        if (kind == Kind::ExtensionField) {
            std::vector<std::uint32_t> c(k, 0);
            c[0] = 1;
            d->one = encode(c);
        }
        if (card <= kTableLimit) {
            d->neg_table = std::make_unique<std::vector<Elem>>(card);
            for (std::uint64_t x = 0; x < card; ++x)
                (*d->neg_table)[x] = neg_raw(static_cast<Elem>(x));
            d->add_table = std::make_unique<std::vector<Elem>>(card * card);
            d->mul_table = std::make_unique<std::vector<Elem>>(card * card);
            for (std::uint64_t x = 0; x < card; ++x)
                for (std::uint64_t y = 0; y < card; ++y) {
                    (*d->add_table)[x * card + y] =
                        add_raw(static_cast<Elem>(x), static_cast<Elem>(y));
                    (*d->mul_table)[x * card + y] =
                        mul_raw(static_cast<Elem>(x), static_cast<Elem>(y));
                }
        }
    }

    // c_0 is the most significant digit so that code order enumerates
    // coefficient sequences lexicographically.
    Elem encode(const std::vector<std::uint32_t>& c) const {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < data_->k; ++i) v = v * data_->p + c[i];
        return static_cast<Elem>(v);
    }
    std::vector<std::uint32_t> decode(Elem x) const {
        std::vector<std::uint32_t> c(data_->k);
        std::uint64_t v = x;
        for (unsigned i = data_->k; i-- > 0;) {
            c[i] = static_cast<std::uint32_t>(v % data_->p);
            v /= data_->p;
        }
        return c;
    }

    Elem add_raw(Elem x, Elem y) const {
        if (data_->kind != Kind::ExtensionField)
            return static_cast<Elem>((static_cast<std::uint64_t>(x) + y) % data_->card);
        auto a = decode(x), b = decode(y);
        for (unsigned i = 0; i < data_->k; ++i)
            a[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) + b[i]) % data_->p);
        return encode(a);
    }
    Elem neg_raw(Elem x) const {
        if (data_->kind != Kind::ExtensionField)
            return static_cast<Elem>((data_->card - x) % data_->card);
        auto a = decode(x);
        for (unsigned i = 0; i < data_->k; ++i)
            a[i] = static_cast<std::uint32_t>((data_->p - a[i]) % data_->p);
        return encode(a);
    }
    Elem mul_raw(Elem x, Elem y) const {
        if (data_->kind != Kind::ExtensionField)
            return static_cast<Elem>(static_cast<std::uint64_t>(x) * y % data_->card);
        auto a = decode(x), b = decode(y);
        std::vector<std::uint32_t> prod(2 * data_->k - 1, 0);
        for (unsigned i = 0; i < data_->k; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < data_->k; ++j)
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % data_->p);
        }
        ring_detail::poly_mod_inplace(prod, data_->modulus, data_->p);
        prod.resize(data_->k, 0);
        return encode(prod);
    }

    std::shared_ptr<const Data> data_;
};

// Checked element wrapper for user-facing arithmetic; raw codes plus a
// Ring are used on hot paths.
struct Element {
    Ring ring;
    Elem code;

    Element(Ring r, Elem c) : ring(std::move(r)), code(c) { ring.check(code); }

    friend Element operator+(const Element& a, const Element& b) {
        require_same(a, b);
        return {a.ring, a.ring.add(a.code, b.code)};
    }
    friend Element operator-(const Element& a, const Element& b) {
        require_same(a, b);
        return {a.ring, a.ring.sub(a.code, b.code)};
    }
    friend Element operator*(const Element& a, const Element& b) {
        require_same(a, b);
        return {a.ring, a.ring.mul(a.code, b.code)};
    }
    Element operator-() const { return {ring, ring.neg(code)}; }
    friend bool operator==(const Element& a, const Element& b) {
        return a.ring == b.ring && a.code == b.code;
    }

private:
    static void require_same(const Element& a, const Element& b) {
        if (a.ring != b.ring) throw DomainError("mixed-ring operands");
    }
};

// One coordinate set A_i of a grid: distinct elements, order fixed at
// construction for deterministic enumeration.
struct CoordinateSet {
    std::vector<Elem> elems;

    CoordinateSet() = default;
    CoordinateSet(const Ring& ring, std::vector<Elem> e) : elems(std::move(e)) {
        if (elems.empty()) throw DomainError("coordinate set must be nonempty");
        for (Elem x : elems) ring.check(x);
        auto sorted = elems;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("coordinate set has duplicate elements");
    }

    std::size_t size() const { return elems.size(); }
};

// Condition (D): every pairwise difference of distinct elements is a
// non-zero-divisor.
inline bool check_condition_d(const Ring& ring, const CoordinateSet& s) {
    for (std::size_t i = 0; i < s.elems.size(); ++i)
        for (std::size_t j = i + 1; j < s.elems.size(); ++j)
            if (ring.is_zero_divisor(ring.sub(s.elems[i], s.elems[j]))) return false;
    return true;
}

// The full ring as a coordinate set, in enumeration order.
inline CoordinateSet full_coordinate_set(const Ring& ring) {
    std::vector<Elem> e(ring.cardinality());
    for (std::uint64_t i = 0; i < ring.cardinality(); ++i) e[i] = static_cast<Elem>(i);
    return CoordinateSet(ring, std::move(e));
}

}  // namespace gridpoly

#pragma once

// Incidence geometry over GF(q): points and hyperplanes of PG(n,q) and
// AG(n,q), partial covers and their holes, blocking sets, essential points,
// tangent hyperplanes, and small exhaustive searches (minimum blocking sets,
// minimum grid covers).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gridpoly/bins.hpp"
#include "gridpoly/common.hpp"
#include "gridpoly/poly.hpp"

namespace gridpoly::geom {

using Vec = std::vector<Elem>;

// Normalizes homogeneous coordinates so the first nonzero entry is 1.
inline Vec normalize_projective(const Ring& field, Vec v) {
    if (!field.is_field()) throw DomainError("projective coordinates need a field");
    for (Elem& x : v) field.check(x);
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (it == v.end()) throw DomainError("projective coordinates cannot be all zero");
    const Elem inv = field.inverse(*it);
    for (Elem& x : v) x = field.mul(x, inv);
    return v;
}

inline Big pg_point_count(int n, std::uint64_t q) {
    return (big_pow(q, static_cast<std::uint64_t>(n) + 1) - 1) / (Big(q) - 1);
}

// Canonical points of PG(n,q) in lexicographic order of the normalized
// (n+1)-vectors.  Hyperplanes use the same set as dual coefficient vectors.
inline std::vector<Vec> pg_points(const Ring& field, int n,
                                  std::uint64_t cap = kDefaultEnumCap) {
    if (!field.is_field()) throw DomainError("PG(n,q) needs a field");
    if (n < 1) throw DomainError("projective dimension must be at least 1");
    const std::uint64_t q = field.cardinality();
    if (pg_point_count(n, q) > cap) throw CapExceeded("projective space exceeds cap");
    std::vector<Vec> pts;
    Vec v(static_cast<std::size_t>(n) + 1, 0);
    auto rec = [&](auto&& self, int pos, bool leading_one_seen) -> void {
        if (pos == n + 1) {
            if (leading_one_seen) pts.push_back(v);
            return;
        }
        if (!leading_one_seen) {
            v[pos] = 0;
            self(self, pos + 1, false);
            v[pos] = field.one();
            self(self, pos + 1, true);
            v[pos] = 0;
        } else {
            for (std::uint64_t x = 0; x < q; ++x) {
                v[pos] = static_cast<Elem>(x);
                self(self, pos + 1, true);
            }
            v[pos] = 0;
        }
    };
    rec(rec, 0, false);
    return pts;
}

inline bool pg_incident(const Ring& field, const Vec& point, const Vec& hyperplane) {
    if (point.size() != hyperplane.size()) throw DomainError("dimension mismatch");
    Elem dot = 0;
    for (std::size_t i = 0; i < point.size(); ++i)
        dot = field.add(dot, field.mul(point[i], hyperplane[i]));
    return dot == 0;
}

// Affine points of AG(n,q) in lexicographic order.
inline std::vector<Vec> ag_points(const Ring& field, int n,
                                  std::uint64_t cap = kDefaultEnumCap) {
    if (!field.is_field()) throw DomainError("AG(n,q) needs a field");
    if (n < 1) throw DomainError("affine dimension must be at least 1");
    const std::uint64_t q = field.cardinality();
    if (big_pow(q, static_cast<std::uint64_t>(n)) > cap)
        throw CapExceeded("affine space exceeds cap");
    std::vector<Vec> pts;
    Vec v(n, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            pts.push_back(v);
            return;
        }
        for (std::uint64_t x = 0; x < q; ++x) {
            v[pos] = static_cast<Elem>(x);
            self(self, pos + 1);
        }
        v[pos] = 0;
    };
    rec(rec, 0);
    return pts;
}

// The zero locus of c_1 t_1 + ... + c_n t_n + r with c nonzero,
// coefficients normalized so the first nonzero one is 1.
struct AffineHyperplane {
    Vec coeffs;
    Elem constant = 0;

    bool operator==(const AffineHyperplane& o) const {
        return coeffs == o.coeffs && constant == o.constant;
    }
};

inline AffineHyperplane normalize_affine(const Ring& field, Vec coeffs, Elem constant) {
    auto it = std::find_if(coeffs.begin(), coeffs.end(), [](Elem x) { return x != 0; });
    if (it == coeffs.end()) throw DomainError("affine hyperplane needs a nonzero coefficient");
    const Elem inv = field.inverse(*it);
    for (Elem& x : coeffs) x = field.mul(x, inv);
    return {std::move(coeffs), field.mul(constant, inv)};
}

inline std::vector<AffineHyperplane> ag_hyperplanes(const Ring& field, int n,
                                                    std::uint64_t cap = kDefaultEnumCap) {
    const std::uint64_t q = field.cardinality();
    // directions = points of PG(n-1, q); q translates of each
    std::vector<Vec> dirs = n == 1 ? std::vector<Vec>{{field.one()}} : pg_points(field, n - 1, cap);
    if (dirs.size() * q > cap) throw CapExceeded("hyperplane family exceeds cap");
    std::vector<AffineHyperplane> hs;
    hs.reserve(dirs.size() * q);
    for (const auto& c : dirs)
        for (std::uint64_t r = 0; r < q; ++r) hs.push_back({c, static_cast<Elem>(r)});
    return hs;
}

inline bool ag_incident(const Ring& field, const Vec& point, const AffineHyperplane& h) {
    if (point.size() != h.coeffs.size()) throw DomainError("dimension mismatch");
    Elem v = h.constant;
    for (std::size_t i = 0; i < point.size(); ++i)
        v = field.add(v, field.mul(h.coeffs[i], point[i]));
    return v == 0;
}

// Embedding AG(n,q) -> PG(n,q): x -> (1 : x), hyperplane c.t + r -> (r : c);
// the hyperplane at infinity is x_0 = 0.
inline Vec pg_point_from_ag(const Ring& field, const Vec& x) {
    Vec v;
    v.reserve(x.size() + 1);
    v.push_back(field.one());
    v.insert(v.end(), x.begin(), x.end());
    return v;
}

inline Vec pg_hyperplane_from_ag(const Ring& field, const AffineHyperplane& h) {
    Vec v;
    v.reserve(h.coeffs.size() + 1);
    v.push_back(h.constant);
    v.insert(v.end(), h.coeffs.begin(), h.coeffs.end());
    return normalize_projective(field, std::move(v));
}

inline Vec pg_hyperplane_at_infinity(const Ring& field, int n) {
    Vec v(static_cast<std::size_t>(n) + 1, 0);
    v[0] = field.one();
    return v;
}

enum class SpaceKind { AG, PG };

struct Space {
    SpaceKind kind;
    int n;
    Ring field;
};

struct Enumeration {
    std::vector<Vec> points;
    std::vector<Vec> pg_hyperplanes;               // PG only
    std::vector<AffineHyperplane> ag_hyperplanes;  // AG only
};

inline Enumeration enumerate_space(const Space& s, std::uint64_t cap = kDefaultEnumCap) {
    Enumeration e;
    if (s.kind == SpaceKind::PG) {
        e.points = pg_points(s.field, s.n, cap);
        e.pg_hyperplanes = e.points;  // self-dual coordinates
    } else {
        e.points = ag_points(s.field, s.n, cap);
        e.ag_hyperplanes = geom::ag_hyperplanes(s.field, s.n, cap);
    }
    return e;
}

struct CoverSpec {
    Space space;
    std::vector<Vec> pg_hyperplanes;               // when space is PG
    std::vector<AffineHyperplane> ag_hyperplanes;  // when space is AG
};

// Points incident to no hyperplane of the cover, in enumeration order.
inline std::vector<Vec> holes(const CoverSpec& cover, std::uint64_t cap = kDefaultEnumCap) {
    const Ring& field = cover.space.field;
    std::vector<Vec> result;
    if (cover.space.kind == SpaceKind::PG) {
        for (const auto& p : pg_points(field, cover.space.n, cap)) {
            bool covered = false;
            for (const auto& h : cover.pg_hyperplanes)
                if (pg_incident(field, p, h)) {
                    covered = true;
                    break;
                }
            if (!covered) result.push_back(p);
        }
    } else {
        for (const auto& p : ag_points(field, cover.space.n, cap)) {
            bool covered = false;
            for (const auto& h : cover.ag_hyperplanes)
                if (ag_incident(field, p, h)) {
                    covered = true;
                    break;
                }
            if (!covered) result.push_back(p);
        }
    }
    return result;
}

// A size-k partial cover of PG(n,q) has at least m(q,...,q; nq-k+1) holes.
inline Big holes_lower_bound(int n, std::uint64_t q, long long k) {
    if (k < 1) throw DomainError("cover size must be positive");
    const std::vector<long long> sizes(n, static_cast<long long>(q));
    const std::vector<long long> ones(n, 1);
    long long total = static_cast<long long>(n) * static_cast<long long>(q) - k + 1;
    Big value;
    if (total > static_cast<long long>(n) * static_cast<long long>(q))
        throw DomainError("cover size must be positive");
    if (total < static_cast<long long>(n))
        value = 1;
    else
        value = bins::min_product({sizes, ones, total});
    // Specialization check: k = q + a with 0 <= a < q gives
    // q^(n-1) - a q^(n-2).
    const long long a = k - static_cast<long long>(q);
    if (a >= 0 && a < static_cast<long long>(q) && n >= 2) {
        const Big expected = big_pow(q, static_cast<std::uint64_t>(n - 1)) -
                             Big(a) * big_pow(q, static_cast<std::uint64_t>(n - 2));
        if (value != expected)
            throw BoundViolation("hole bound disagrees with its closed-form specialization");
    }
    return value;
}

struct MissingCount {
    std::uint64_t count = 0;  // hyperplanes of AG(n,q) disjoint from S
    Big bound = 0;            // m(q,...,q; nq - #S + 1) - 1
};

// Counts affine hyperplanes missing S by scanning the projective
// embedding (every PG hyperplane except the one at infinity is affine).
inline MissingCount missing_hyperplanes(const Ring& field, int n, const std::vector<Vec>& s,
                                        std::uint64_t cap = kDefaultEnumCap) {
    if (s.empty()) throw DomainError("point set must be nonempty");
    const std::uint64_t q = field.cardinality();
    std::vector<Vec> embedded;
    embedded.reserve(s.size());
    for (const auto& x : s) {
        if (static_cast<int>(x.size()) != n) throw DomainError("point dimension mismatch");
        embedded.push_back(pg_point_from_ag(field, x));
    }
    const Vec infinity = pg_hyperplane_at_infinity(field, n);
    MissingCount out;
    for (const auto& h : pg_points(field, n, cap)) {
        if (h == infinity) continue;
        bool meets = false;
        for (const auto& p : embedded)
            if (pg_incident(field, p, h)) {
                meets = true;
                break;
            }
        if (!meets) ++out.count;
    }
    out.bound = holes_lower_bound(n, q, static_cast<long long>(s.size())) - 1;
    if (Big(out.count) < out.bound)
        throw BoundViolation("missing-hyperplane count fell below its lower bound");
    return out;
}

inline bool is_blocking_set(const Space& space, const std::vector<Vec>& b,
                            std::uint64_t cap = kDefaultEnumCap) {
    const Ring& field = space.field;
    if (space.kind == SpaceKind::PG) {
        std::vector<Vec> pts;
        pts.reserve(b.size());
        for (const auto& p : b) pts.push_back(normalize_projective(field, p));
        for (const auto& h : pg_points(field, space.n, cap)) {
            bool met = false;
            for (const auto& p : pts)
                if (pg_incident(field, p, h)) {
                    met = true;
                    break;
                }
            if (!met) return false;
        }
        return true;
    }
    for (const auto& h : ag_hyperplanes(field, space.n, cap)) {
        bool met = false;
        for (const auto& p : b)
            if (ag_incident(field, p, h)) {
                met = true;
                break;
            }
        if (!met) return false;
    }
    return true;
}

// Hyperplanes meeting B exactly in {x}.
inline std::vector<Vec> tangent_hyperplanes(const Ring& field, int n, const std::vector<Vec>& b,
                                            const Vec& x, std::uint64_t cap = kDefaultEnumCap) {
    const Vec xn = normalize_projective(field, x);
    std::vector<Vec> tangents;
    for (const auto& h : pg_points(field, n, cap)) {
        if (!pg_incident(field, xn, h)) continue;
        bool only_x = true;
        for (const auto& p : b) {
            if (p == xn) continue;
            if (pg_incident(field, p, h)) {
                only_x = false;
                break;
            }
        }
        if (only_x) tangents.push_back(h);
    }
    return tangents;
}

// Points of B whose removal destroys the blocking property; cross-checked
// against tangent-hyperplane existence.
inline std::vector<Vec> essential_points(const Space& space, const std::vector<Vec>& b,
                                         std::uint64_t cap = kDefaultEnumCap) {
    if (space.kind != SpaceKind::PG) throw DomainError("essential points are defined in PG(n,q)");
    const Ring& field = space.field;
    std::vector<Vec> pts;
    pts.reserve(b.size());
    for (const auto& p : b) pts.push_back(normalize_projective(field, p));
    if (!is_blocking_set(space, pts, cap)) throw DomainError("set is not a blocking set");
    std::vector<Vec> essentials;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Vec> rest;
        rest.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) rest.push_back(pts[j]);
        const bool essential = !is_blocking_set(space, rest, cap);
        const bool has_tangent = !tangent_hyperplanes(field, space.n, pts, pts[i], cap).empty();
        if (essential != has_tangent)
            throw BoundViolation("essential point does not match tangent existence");
        if (essential) essentials.push_back(pts[i]);
    }
    return essentials;
}

struct TangentCount {
    std::uint64_t count = 0;
    Big bound = 0;  // m(q,...,q; nq - #B + 2)
};

inline TangentCount tangent_count(const Space& space, const std::vector<Vec>& b, const Vec& x,
                                  std::uint64_t cap = kDefaultEnumCap) {
    if (space.kind != SpaceKind::PG) throw DomainError("tangent counts are defined in PG(n,q)");
    const Ring& field = space.field;
    std::vector<Vec> pts;
    pts.reserve(b.size());
    for (const auto& p : b) pts.push_back(normalize_projective(field, p));
    if (!is_blocking_set(space, pts, cap)) throw DomainError("set is not a blocking set");
    const Vec xn = normalize_projective(field, x);
    if (std::find(pts.begin(), pts.end(), xn) == pts.end())
        throw DomainError("point does not belong to the blocking set");
    const auto tangents = tangent_hyperplanes(field, space.n, pts, xn, cap);
    if (tangents.empty()) throw DomainError("point is not essential (no tangent hyperplane)");
    TangentCount out;
    out.count = tangents.size();
    const std::uint64_t q = field.cardinality();
    const long long total = static_cast<long long>(space.n) * static_cast<long long>(q) -
                            static_cast<long long>(pts.size()) + 2;
    const std::vector<long long> sizes(space.n, static_cast<long long>(q));
    const std::vector<long long> ones(space.n, 1);
    out.bound = total < space.n ? Big(1) : bins::min_product({sizes, ones, total});
    // Plane case: #B = 2q - s has at least s+1 tangents, matching the bound.
    if (space.n == 2) {
        const long long s = 2 * static_cast<long long>(q) - static_cast<long long>(pts.size());
        if (s >= 0 && s + 1 <= static_cast<long long>(q) && out.bound != s + 1)
            throw BoundViolation("tangent bound disagrees with the plane closed form");
    }
    if (Big(out.count) < out.bound)
        throw BoundViolation("tangent count fell below its lower bound");
    return out;
}

struct BlockingSearchResult {
    long long size = 0;
    std::vector<Vec> witness;
};

// Smallest k <= max_size admitting a blocking set, by lexicographic subset
// enumeration with early exit on the first unmet hyperplane.
inline std::optional<BlockingSearchResult> min_blocking_search(
    const Space& space, long long max_size, std::uint64_t cap = kDefaultEnumCap) {
    const Enumeration e = enumerate_space(space, cap);
    const std::size_t npts = e.points.size();
    auto meets_all = [&](const std::vector<std::size_t>& idx) {
        if (space.kind == SpaceKind::PG) {
            for (const auto& h : e.pg_hyperplanes) {
                bool met = false;
                for (std::size_t i : idx)
                    if (pg_incident(space.field, e.points[i], h)) {
                        met = true;
                        break;
                    }
                if (!met) return false;
            }
        } else {
            for (const auto& h : e.ag_hyperplanes) {
                bool met = false;
                for (std::size_t i : idx)
                    if (ag_incident(space.field, e.points[i], h)) {
                        met = true;
                        break;
                    }
                if (!met) return false;
            }
        }
        return true;
    };
    for (long long k = 1; k <= max_size; ++k) {
        if (binom_big(npts, static_cast<std::uint64_t>(k)) > cap)
            throw CapExceeded("subset enumeration exceeds cap");
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        if (static_cast<std::size_t>(k) > npts) break;
        while (true) {
            if (meets_all(idx)) {
                BlockingSearchResult r;
                r.size = k;
                for (std::size_t i : idx) r.witness.push_back(e.points[i]);
                return r;
            }
            // next combination in lexicographic order
            long long pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                   npts - static_cast<std::size_t>(k - pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < idx.size(); ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

struct GridCoverResult {
    long long size = 0;
    // Witness hyperplanes as (coefficients, constant) over the grid's ring.
    std::vector<std::pair<Vec, Elem>> witness;
};

// Minimum number of ring hyperplanes (some coefficient a unit) covering
// the grid; equals min #A_i on Condition-(D) grids.
inline GridCoverResult grid_cover_min(const GridSpec& grid, std::uint64_t cap = kDefaultEnumCap) {
    const Ring& ring = grid.ring();
    const int n = grid.nvars();
    const std::uint64_t npts = grid.point_count();
    if (npts > 64) throw CapExceeded("grid cover search supports at most 64 points");
    std::vector<std::vector<Elem>> points;
    points.reserve(npts);
    grid.for_each_point([&](const std::vector<Elem>& pt) { points.push_back(pt); });

    // Enumerate canonical hyperplanes: first unit coefficient scaled to 1.
    const std::uint64_t card = ring.cardinality();
    Big raw_count = big_pow(card, static_cast<std::uint64_t>(n) + 1);
    if (raw_count > cap) throw CapExceeded("hyperplane enumeration exceeds cap");
    std::vector<std::uint64_t> masks;
    std::vector<std::pair<Vec, Elem>> reps;
    Vec coeffs(n, 0);
    auto rec = [&](auto&& self, int pos, bool unit_seen) -> void {
        if (pos == n) {
            if (!unit_seen) return;
            for (std::uint64_t r = 0; r < card; ++r) {
                std::uint64_t mask = 0;
                for (std::size_t pi = 0; pi < points.size(); ++pi) {
                    Elem v = static_cast<Elem>(r);
                    for (int i = 0; i < n; ++i)
                        v = ring.add(v, ring.mul(coeffs[i], points[pi][i]));
                    if (v == 0) mask |= std::uint64_t{1} << pi;
                }
                if (mask == 0) continue;
                if (std::find(masks.begin(), masks.end(), mask) == masks.end()) {
                    masks.push_back(mask);
                    reps.emplace_back(coeffs, static_cast<Elem>(r));
                }
            }
            return;
        }
        if (!unit_seen) {
            // Before the first unit: any non-unit value, or the unit 1.
            for (std::uint64_t x = 0; x < card; ++x) {
                if (ring.is_unit(static_cast<Elem>(x))) continue;
                coeffs[pos] = static_cast<Elem>(x);
                self(self, pos + 1, false);
            }
            coeffs[pos] = ring.one();
            self(self, pos + 1, true);
            coeffs[pos] = 0;
        } else {
            for (std::uint64_t x = 0; x < card; ++x) {
                coeffs[pos] = static_cast<Elem>(x);
                self(self, pos + 1, true);
            }
            coeffs[pos] = 0;
        }
    };
    rec(rec, 0, false);

    const std::uint64_t full = npts == 64 ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << npts) - 1;
    for (long long k = 1; k <= static_cast<long long>(masks.size()); ++k) {
        if (binom_big(masks.size(), static_cast<std::uint64_t>(k)) > cap)
            throw CapExceeded("cover subset enumeration exceeds cap");
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::uint64_t acc = 0;
            for (std::size_t i : idx) acc |= masks[i];
            if (acc == full) {
                GridCoverResult r;
                r.size = k;
                for (std::size_t i : idx) r.witness.push_back(reps[i]);
                const auto sizes = grid.sizes();
                const long long expect = *std::min_element(sizes.begin(), sizes.end());
                if (grid.condition_d_all() && r.size != expect)
                    throw BoundViolation("grid cover minimum differs from min #A_i");
                return r;
            }
            long long pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                   masks.size() - static_cast<std::size_t>(k - pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < idx.size(); ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    throw BoundViolation("no hyperplane cover found");  // unreachable: axis planes cover
}

struct AxisCover {
    std::vector<std::pair<int, Elem>> hyperplanes;  // (variable, root): t_var = root
    std::uint64_t missed = 0;
    Big expected_missed = 0;
};

// Realizes a d-element family of axis-parallel hyperplanes missing exactly
// m(a_1,...,a_n; sum a_i - d) grid points.
inline AxisCover axis_parallel_cover(const GridSpec& grid, long long d) {
    const auto sizes = grid.sizes();
    const int n = grid.nvars();
    long long slack = 0;
    for (long long a : sizes) slack += a - 1;
    if (d < 0 || d > slack) throw DomainError("cover size out of range 0 <= d <= sum(a_i - 1)");
    long long total = std::accumulate(sizes.begin(), sizes.end(), 0LL) - d;
    const std::vector<long long> ones(n, 1);
    const auto [value, dist] = bins::brute_force_min_product({sizes, ones, total});
    AxisCover out;
    out.expected_missed = value;
    for (int i = 0; i < n; ++i) {
        const long long roots = sizes[i] - dist.counts[i];
        for (long long r = 0; r < roots; ++r)
            out.hyperplanes.emplace_back(i, grid.set(i).elems[static_cast<std::size_t>(r)]);
    }
    grid.for_each_point([&](const std::vector<Elem>& pt) {
        for (const auto& [var, root] : out.hyperplanes)
            if (pt[var] == root) return;
        ++out.missed;
    });
    if (Big(out.missed) != out.expected_missed)
        throw BoundViolation("axis-parallel cover misses an unexpected number of points");
    return out;
}

}  // namespace gridpoly::geom

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "gridpoly/poly.hpp"
#include "test_util.hpp"

using namespace gridpoly;
using testutil::Rng;
using testutil::random_point;
using testutil::random_poly;

namespace {

SparsePoly make_poly(const Ring& ring, int nvars,
                     std::vector<std::pair<Monomial, long long>> terms) {
    SparsePoly f(ring, nvars);
    for (auto& [m, c] : terms) f.add_term(std::move(m), ring.from_int(c));
    return f;
}

GridSpec subset_grid(const Ring& ring, std::vector<std::vector<Elem>> sets) {
    std::vector<CoordinateSet> cs;
    for (auto& s : sets) cs.emplace_back(ring, std::move(s));
    return GridSpec(ring, std::move(cs));
}

}  // namespace

TEST_CASE("degrees and the zero polynomial", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    auto f = make_poly(gf5, 3, {{{2, 1, 0}, 1}, {{0, 0, 1}, 1}});
    auto d = degrees(f);
    REQUIRE(d.total == 3);
    REQUIRE(d.per_var == std::vector<std::optional<int>>{2, 1, 1});

    auto c = SparsePoly::constant(gf5, 2, 3);
    REQUIRE(degrees(c).total == 0);
    REQUIRE(degrees(c).per_var == std::vector<std::optional<int>>{0, 0});

    auto z = SparsePoly::zero(gf5, 2);
    REQUIRE_FALSE(degrees(z).total.has_value());
    REQUIRE_FALSE(degrees(z).per_var[0].has_value());
    REQUIRE_FALSE(degrees(z).per_var[1].has_value());
}

TEST_CASE("evaluation", "[poly]") {
    Ring gf3 = Ring::prime_field(3);
    auto f = make_poly(gf3, 2, {{{1, 1}, 1}});
    REQUIRE(f.evaluate({2, 2}) == 1);

    Ring z6 = Ring::modular(6);
    auto g = make_poly(z6, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    REQUIRE(g.evaluate({3, 3}) == 0);

    // t^3 + 2t vanishes identically on GF(3).
    auto h = make_poly(gf3, 1, {{{3}, 1}, {{1}, 2}});
    for (Elem x = 0; x < 3; ++x) REQUIRE(h.evaluate({x}) == 0);

    REQUIRE_THROWS_AS(f.evaluate({1}), DomainError);
}

TEST_CASE("zero census", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    GridSpec s2 = subset_grid(gf5, {{0, 1, 2}, {0, 1, 2}});
    auto f = make_poly(gf5, 2, {{{1, 1}, 1}});
    auto census = zero_census(f, s2, kDefaultEnumCap, true);
    REQUIRE(census.zeros == 5);
    REQUIRE(census.nonzeros == 4);
    REQUIRE(census.zero_points->size() == 5);
    REQUIRE(census.zero_points->front() == std::vector<Elem>{0, 0});

    auto one = SparsePoly::constant(gf5, 2, 1);
    REQUIRE(zero_census(one, s2).zeros == 0);

    Ring gf3 = Ring::prime_field(3);
    GridSpec full3 = GridSpec::full(gf3, 2);
    auto diag = make_poly(gf3, 2, {{{1, 0}, 1}, {{0, 1}, -1}});
    REQUIRE(zero_census(diag, full3).zeros == 3);

    REQUIRE_THROWS_AS(zero_census(one, s2, 4), CapExceeded);
}

TEST_CASE("grid reduction", "[poly]") {
    Ring gf3 = Ring::prime_field(3);
    GridSpec a = GridSpec::full(gf3, 2);
    auto f = make_poly(gf3, 2, {{{3, 0}, 1}});  // t1^3
    auto r = grid_reduce(f, a);
    REQUIRE(r == make_poly(gf3, 2, {{{1, 0}, 1}}));

    // Already reduced: identity.
    auto g = make_poly(gf3, 2, {{{2, 2}, 2}, {{1, 0}, 1}});
    REQUIRE(grid_reduce(g, a) == g);

    // t^2 over {0,1}: t^2 - t(t-1) = t.
    Ring z6 = Ring::modular(6);
    GridSpec line = subset_grid(z6, {{0, 1}});
    auto t2 = make_poly(z6, 1, {{{2}, 1}});
    REQUIRE(grid_reduce(t2, line) == make_poly(z6, 1, {{{1}, 1}}));
}

TEST_CASE("grid reduction properties", "[poly]") {
    Rng rng(2024);
    for (const Ring& ring : {Ring::prime_field(3), Ring::prime_field(5), Ring::modular(6),
                             Ring::extension_field(2, 2)}) {
        GridSpec a = ring.cardinality() == 6
                         ? subset_grid(ring, {{0, 1}, {3, 4, 5}})
                         : subset_grid(ring, {{0, 1}, {0, 1, 2}});
        for (int trial = 0; trial < 60; ++trial) {
            auto f = random_poly(ring, 2, 5, 6, rng);
            auto r = grid_reduce(f, a);
            // Reduced degrees are below the set sizes.
            for (int v = 0; v < 2; ++v) {
                auto dv = r.degree_in(v);
                if (dv) REQUIRE(*dv < static_cast<int>(a.set(v).size()));
            }
            // Degrees never increase.
            if (!f.is_zero() && !r.is_zero()) {
                REQUIRE(*r.total_degree() <= *f.total_degree());
                for (int v = 0; v < 2; ++v) REQUIRE(*r.degree_in(v) <= *f.degree_in(v));
            }
            // Same evaluations on every grid point.
            a.for_each_point([&](const std::vector<Elem>& pt) {
                REQUIRE(f.evaluate(pt) == r.evaluate(pt));
            });
            // Idempotent.
            REQUIRE(grid_reduce(r, a) == r);
        }
    }
}

TEST_CASE("reduction order is immaterial", "[poly]") {
    // Reduce with variables processed in swapped order by permuting both the
    // polynomial and the grid; uniqueness of the reduced form makes the
    // results equal.
    Ring gf3 = Ring::prime_field(3);
    GridSpec a = subset_grid(gf3, {{0, 1}, {0, 1, 2}});
    GridSpec swapped = subset_grid(gf3, {{0, 1, 2}, {0, 1}});
    Rng rng(55);
    auto swap_vars = [&](const SparsePoly& f) {
        SparsePoly g(f.ring(), 2);
        for (const auto& [m, c] : f.terms()) g.add_term({m[1], m[0]}, c);
        return g;
    };
    for (int trial = 0; trial < 80; ++trial) {
        auto f = random_poly(gf3, 2, 5, 6, rng);
        auto direct = grid_reduce(f, a);
        auto roundabout = swap_vars(grid_reduce(swap_vars(f), swapped));
        REQUIRE(direct == roundabout);
    }
}

TEST_CASE("vanishing tests and CATS", "[poly]") {
    Ring gf3 = Ring::prime_field(3);
    GridSpec a = GridSpec::full(gf3, 2);
    REQUIRE(vanishes_on_grid(phi_poly(a, 0), a));
    GridSpec off = subset_grid(gf3, {{1, 2}, {0, 1}});
    auto t1 = make_poly(gf3, 2, {{{1, 0}, 1}});
    REQUIRE_FALSE(vanishes_on_grid(t1, off));

    // r_A(f) = 0 iff f vanishes on A, with the census as the oracle.
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_poly(gf3, 2, 4, 5, rng);
        const bool via_reduce = grid_reduce(f, a).is_zero();
        const bool via_census = zero_census(f, a).nonzeros == 0;
        REQUIRE(via_reduce == via_census);
        REQUIRE(vanishes_on_grid(f, a) == via_census);
    }
}

TEST_CASE("CATS holds exhaustively on small Condition-D grids", "[poly]") {
    // Every nonzero reduced polynomial attains a nonzero value somewhere.
    struct Case {
        Ring ring;
        GridSpec grid;
    };
    Ring gf2 = Ring::prime_field(2);
    Ring z6 = Ring::modular(6);
    std::vector<Case> cases;
    cases.push_back({gf2, GridSpec::full(gf2, 2)});
    cases.push_back({z6, subset_grid(z6, {{0, 1}, {3, 4}})});
    for (const auto& [ring, grid] : cases) {
        REQUIRE(grid.condition_d_all());
        const auto sizes = grid.sizes();
        std::vector<Monomial> monos;
        for (long long e0 = 0; e0 < sizes[0]; ++e0)
            for (long long e1 = 0; e1 < sizes[1]; ++e1)
                monos.push_back({static_cast<std::uint32_t>(e0), static_cast<std::uint32_t>(e1)});
        const std::uint64_t card = ring.cardinality();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < monos.size(); ++i) total *= card;
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            SparsePoly f(ring, 2);
            std::uint64_t v = idx;
            for (const auto& m : monos) {
                f.add_term(m, static_cast<Elem>(v % card));
                v /= card;
            }
            REQUIRE(zero_census(f, grid).nonzeros > 0);
        }
    }

    // Without Condition (D) the statement fails: 2t vanishes on {0,2} in Z/4.
    Ring z4 = Ring::modular(4);
    GridSpec bad = subset_grid(z4, {{0, 2}});
    REQUIRE_FALSE(bad.condition_d_all());
    auto f = make_poly(z4, 1, {{{1}, 2}});
    REQUIRE_FALSE(f.is_zero());
    REQUIRE(vanishes_on_grid(f, bad));
}

TEST_CASE("Hasse derivatives", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    auto t3 = make_poly(gf5, 1, {{{3}, 1}});
    REQUIRE(hasse_derivative(t3, {1}) == make_poly(gf5, 1, {{{2}, 3}}));

    Ring gf2 = Ring::prime_field(2);
    auto t2 = make_poly(gf2, 1, {{{2}, 1}});
    REQUIRE(hasse_derivative(t2, {1}).is_zero());  // binom(2,1) = 0 in GF(2)

    auto t1t2 = make_poly(gf5, 2, {{{1, 1}, 1}});
    REQUIRE(hasse_derivative(t1t2, {1, 1}) == SparsePoly::constant(gf5, 2, 1));
    REQUIRE(hasse_derivative(t1t2, {2, 0}).is_zero());
}

TEST_CASE("Taylor expansion matches product-form shifting", "[poly]") {
    Rng rng(4242);
    for (const Ring& ring : {Ring::prime_field(3), Ring::extension_field(2, 2), Ring::modular(6)}) {
        for (int trial = 0; trial < 60; ++trial) {
            auto f = random_poly(ring, 2, 4, 5, rng);
            auto x = random_point(ring, 2, rng);
            auto shifted = taylor_shift(f, x);
            REQUIRE(shifted == testutil::shift_by_products(f, x));
            // Coefficient of t^J in f(t+x) equals D^J(f)(x).
            for (const auto& [m, c] : shifted.terms())
                REQUIRE(hasse_derivative(f, m).evaluate(x) == c);
            // And monomials absent from the shift have vanishing derivative.
            const std::vector<Elem> origin(2, 0);
            for (std::uint32_t j0 = 0; j0 < 5; ++j0)
                for (std::uint32_t j1 = 0; j1 < 5; ++j1)
                    REQUIRE(hasse_derivative(f, {j0, j1}).evaluate(x) ==
                            shifted.coeff({j0, j1}));
        }
    }
}

TEST_CASE("Leibniz rule for univariate Hasse derivatives", "[poly]") {
    Rng rng(31337);
    for (const Ring& ring : {Ring::prime_field(5), Ring::modular(6), Ring::extension_field(3, 2)}) {
        for (int trial = 0; trial < 80; ++trial) {
            auto g = random_poly(ring, 1, 4, 4, rng);
            auto h = random_poly(ring, 1, 4, 4, rng);
            auto gh = g * h;
            for (std::uint32_t i = 0; i <= 8; ++i) {
                SparsePoly rhs(ring, 1);
                for (std::uint32_t j = 0; j <= i; ++j)
                    rhs = rhs + hasse_derivative(g, {j}) * hasse_derivative(h, {i - j});
                REQUIRE(hasse_derivative(gh, {i}) == rhs);
            }
        }
    }
}

TEST_CASE("derivative of derivative", "[poly]") {
    Rng rng(808);
    Ring z6 = Ring::modular(6);
    for (int trial = 0; trial < 80; ++trial) {
        auto f = random_poly(z6, 2, 4, 5, rng);
        Monomial i{static_cast<std::uint32_t>(rng.below(3)), static_cast<std::uint32_t>(rng.below(3))};
        Monomial j{static_cast<std::uint32_t>(rng.below(3)), static_cast<std::uint32_t>(rng.below(3))};
        Monomial sum{i[0] + j[0], i[1] + j[1]};
        Big scalar = binom_big(sum[0], i[0]) * binom_big(sum[1], i[1]);
        auto lhs = hasse_derivative(hasse_derivative(f, i), j);
        auto rhs = hasse_derivative(f, sum).scaled(z6.from_big(scalar));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("multiplicity", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    auto t1t2 = make_poly(gf5, 2, {{{1, 1}, 1}});
    REQUIRE(multiplicity(t1t2, {0, 0}) == 2);
    REQUIRE(multiplicity(t1t2, {1, 1}) == 0);
    REQUIRE_FALSE(multiplicity(SparsePoly::zero(gf5, 2), {0, 0}).has_value());

    // (t-1)^2 t over GF(5) at 1: D^0 and D^1 vanish, D^2 does not.
    auto f = make_poly(gf5, 1, {{{3}, 1}, {{2}, -2}, {{1}, 1}});
    REQUIRE(hasse_derivative(f, {0}).evaluate({1}) == 0);
    REQUIRE(hasse_derivative(f, {1}).evaluate({1}) == 0);
    REQUIRE(hasse_derivative(f, {2}).evaluate({1}) != 0);
    REQUIRE(multiplicity(f, {1}) == 2);
    REQUIRE(multiplicity(f, {0}) == 1);
    REQUIRE(multiplicity(f, {2}) == 0);
}

TEST_CASE("multiplicity sum", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    GridSpec line = subset_grid(gf5, {{0, 1, 2}});
    auto f = make_poly(gf5, 1, {{{3}, 1}, {{2}, -2}, {{1}, 1}});  // (t-1)^2 t
    REQUIRE(multiplicity_sum(f, line) == 3);

    for (std::uint64_t q : {3ull, 4ull, 5ull}) {
        Ring ring = q == 4 ? Ring::extension_field(2, 2) : Ring::prime_field(q);
        GridSpec grid = GridSpec::full(ring, 2);
        for (std::uint32_t d1 = 1; d1 < q; ++d1)
            for (std::uint32_t d2 = 1; d2 < q; ++d2) {
                auto g = make_poly(ring, 2, {{{d1, d2}, 1}});
                REQUIRE(multiplicity_sum(g, grid) == q * d1 + q * d2);
            }
    }

    auto one = SparsePoly::constant(gf5, 1, 1);
    REQUIRE(multiplicity_sum(one, line) == 0);
    REQUIRE_THROWS_AS(multiplicity_sum(SparsePoly::zero(gf5, 1), line), DomainError);
}

TEST_CASE("restriction to a line", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    auto t1t2 = make_poly(gf5, 2, {{{1, 1}, 1}});
    REQUIRE(restrict_to_line(t1t2, {0, 0}, {1, 1}) == make_poly(gf5, 1, {{{2}, 1}}));

    auto c = SparsePoly::constant(gf5, 2, 3);
    REQUIRE(restrict_to_line(c, {1, 2}, {3, 4}) == make_poly(gf5, 1, {{{0}, 3}}));

    auto f = make_poly(gf5, 2, {{{2, 1}, 1}});  // t1^2 t2
    REQUIRE(restrict_to_line(f, {1, 0}, {0, 1}) == make_poly(gf5, 1, {{{1}, 1}}));
}

TEST_CASE("line restriction respects multiplicities", "[poly]") {
    Rng rng(606);
    for (const Ring& ring : {Ring::prime_field(3), Ring::extension_field(2, 2)}) {
        for (int trial = 0; trial < 120; ++trial) {
            auto f = random_poly(ring, 2, 3, 4, rng);
            if (f.is_zero()) continue;
            auto a = random_point(ring, 2, rng);
            auto b = random_point(ring, 2, rng);
            const Elem cval = static_cast<Elem>(rng.below(ring.cardinality()));
            auto restricted = restrict_to_line(f, a, b);
            std::vector<Elem> target{ring.add(a[0], ring.mul(cval, b[0])),
                                     ring.add(a[1], ring.mul(cval, b[1]))};
            auto line_mult = multiplicity(restricted, {cval});
            auto point_mult = multiplicity(f, target);
            if (line_mult.has_value())
                REQUIRE(*line_mult >= *point_mult);  // else restriction is 0, infinite mult
        }
    }
}

TEST_CASE("multiplicity drops by at most the derivative order", "[poly]") {
    Rng rng(911);
    Ring gf4 = Ring::extension_field(2, 2);
    for (int trial = 0; trial < 150; ++trial) {
        auto f = random_poly(gf4, 2, 3, 4, rng);
        if (f.is_zero()) continue;
        auto x = random_point(gf4, 2, rng);
        Monomial i{static_cast<std::uint32_t>(rng.below(3)),
                   static_cast<std::uint32_t>(rng.below(3))};
        auto df = hasse_derivative(f, i);
        const auto mf = *multiplicity(f, x);
        const auto mdf = multiplicity(df, x);
        if (mdf.has_value()) {
            const long long lhs = static_cast<long long>(*mdf);
            REQUIRE(lhs >= static_cast<long long>(mf) - static_cast<long long>(monomial_degree(i)));
        }
    }
}

TEST_CASE("non-zero-divisor factors cancel in multiplicity", "[poly]") {
    Rng rng(7000);
    Ring z6 = Ring::modular(6);
    int done = 0;
    while (done < 100) {
        auto g = random_poly(z6, 1, 3, 3, rng);
        auto h = random_poly(z6, 1, 3, 3, rng);
        if (h.is_zero() || g.is_zero()) continue;
        const Elem x = static_cast<Elem>(rng.below(6));
        if (z6.is_zero_divisor(g.evaluate({x}))) continue;
        auto f = g * h;
        REQUIRE(multiplicity(f, {x}) == multiplicity(h, {x}));
        ++done;
    }
}

TEST_CASE("univariate multiplicity sums are bounded by the degree", "[poly]") {
    // Exhaustive: all univariate polynomials of degree <= 4 over GF(3).
    Ring gf3 = Ring::prime_field(3);
    GridSpec full = subset_grid(gf3, {{0, 1, 2}});
    for (std::uint64_t idx = 1; idx < 243; ++idx) {
        SparsePoly f(gf3, 1);
        std::uint64_t v = idx;
        for (std::uint32_t e = 0; e <= 4; ++e) {
            f.add_term({e}, static_cast<Elem>(v % 3));
            v /= 3;
        }
        if (f.is_zero()) continue;
        REQUIRE(multiplicity_sum(f, full) <= static_cast<std::uint64_t>(*f.total_degree()));
    }
    // Random cases over a Condition-D subset of Z/6.
    Ring z6 = Ring::modular(6);
    GridSpec pair = subset_grid(z6, {{2, 3}});
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_poly(z6, 1, 5, 4, rng);
        if (f.is_zero()) continue;
        REQUIRE(multiplicity_sum(f, pair) <= static_cast<std::uint64_t>(*f.total_degree()));
    }
}

TEST_CASE("extremal polylinear construction", "[poly]") {
    Ring gf3 = Ring::prime_field(3);
    GridSpec a = GridSpec::full(gf3, 2);

    auto f2 = extremal_polylinear(a, {2, 2}, 2);
    REQUIRE(*f2.total_degree() == 2);
    REQUIRE(zero_census(f2, a).nonzeros == 3);  // m(3,3;4) = 3
    // Realizes the lexicographically least argmin (1,3): both roots on t1.
    REQUIRE(f2 == SparsePoly::linear_factor(gf3, 2, 0, 0) * SparsePoly::linear_factor(gf3, 2, 0, 1));

    auto f0 = extremal_polylinear(a, {2, 2}, 0);
    REQUIRE(f0 == SparsePoly::constant(gf3, 2, 1));
    REQUIRE(zero_census(f0, a).nonzeros == 9);

    auto fmax = extremal_polylinear(a, {2, 2}, 4);
    REQUIRE(zero_census(fmax, a).nonzeros == 1);

    REQUIRE_THROWS_AS(extremal_polylinear(a, {2, 2}, 5), DomainError);
    REQUIRE_THROWS_AS(extremal_polylinear(a, {3, 2}, 1), DomainError);
}

TEST_CASE("leading coefficient chains", "[poly]") {
    Ring gf5 = Ring::prime_field(5);
    auto t1t2 = make_poly(gf5, 2, {{{1, 1}, 1}});
    REQUIRE(leading_coeff_chain(t1t2).degrees == std::vector<int>{1, 1});

    auto f = make_poly(gf5, 2, {{{2, 1}, 1}, {{1, 0}, 1}});  // t1^2 t2 + t1
    auto chain = leading_coeff_chain(f);
    REQUIRE(chain.degrees == std::vector<int>{2, 1});
    REQUIRE(chain.witnesses[1] == f);
    REQUIRE(chain.witnesses[0] == make_poly(gf5, 2, {{{2, 0}, 1}}));

    auto c = SparsePoly::constant(gf5, 3, 4);
    REQUIRE(leading_coeff_chain(c).degrees == std::vector<int>{0, 0, 0});

    REQUIRE_THROWS_AS(leading_coeff_chain(SparsePoly::zero(gf5, 2)), DomainError);
}

TEST_CASE("evaluation is a ring homomorphism", "[poly]") {
    Rng rng(2718);
    for (const Ring& ring : {Ring::prime_field(5), Ring::modular(6), Ring::extension_field(2, 2)}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto f = random_poly(ring, 2, 4, 4, rng);
            auto g = random_poly(ring, 2, 4, 4, rng);
            auto x = random_point(ring, 2, rng);
            REQUIRE((f + g).evaluate(x) == ring.add(f.evaluate(x), g.evaluate(x)));
            REQUIRE((f * g).evaluate(x) == ring.mul(f.evaluate(x), g.evaluate(x)));
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "gridpoly/format.hpp"
#include "test_util.hpp"

using namespace gridpoly;
using testutil::Rng;
using testutil::random_poly;

TEST_CASE("ring syntax round-trips", "[format]") {
    for (const char* text : {"GF:3", "GF:5", "Z:6", "Z:12", "GF:2^3:1,1,0,1", "GF:3^2:1,0,1"}) {
        Ring r = parse_ring(text);
        REQUIRE(format_ring(r) == text);
    }
    // A bare extension field gets the canonical modulus spelled out.
    REQUIRE(format_ring(parse_ring("GF:2^2")) == "GF:2^2:1,1,1");
    REQUIRE_THROWS_AS(parse_ring("GF:4"), DomainError);
    REQUIRE_THROWS_AS(parse_ring("GF:4^2"), DomainError);
    REQUIRE_THROWS_AS(parse_ring("Q:5"), ParseError);
    REQUIRE_THROWS_AS(parse_ring("Z:x"), ParseError);
    REQUIRE_THROWS_AS(parse_ring("GF:2^2:1,1"), DomainError);  // wrong length
}

TEST_CASE("element literals", "[format]") {
    Ring gf9 = Ring::extension_field(3, 2);
    const Elem e = parse_element(gf9, "[1,2]");
    REQUIRE(gf9.coeffs(e) == std::vector<std::uint32_t>{1, 2});
    REQUIRE(format_element(gf9, e) == "[1,2]");

    Ring z6 = Ring::modular(6);
    REQUIRE(parse_element(z6, "4") == 4);
    REQUIRE(parse_element(z6, "10") == 4);  // reduced to the representative
    REQUIRE(format_element(z6, 4) == "4");
    REQUIRE_THROWS_AS(parse_element(z6, "[1,2]"), ParseError);
    REQUIRE_THROWS_AS(parse_element(gf9, "[1]"), ParseError);
    REQUIRE_THROWS_AS(parse_element(z6, "x"), ParseError);
}

TEST_CASE("polynomial formatting", "[format]") {
    Ring gf3 = Ring::prime_field(3);
    SparsePoly f(gf3, 2);
    f.add_term({1, 0}, 1);
    REQUIRE(format_poly(f) == "t1");
    f.add_term({0, 0}, 2);
    REQUIRE(format_poly(f) == "t1 + 2");
    f.add_term({2, 1}, 2);
    REQUIRE(format_poly(f) == "2*t1^2*t2 + t1 + 2");
    REQUIRE(format_poly(SparsePoly::zero(gf3, 2)) == "0");
    // Within a degree, t1-major order.
    SparsePoly g(gf3, 2);
    g.add_term({0, 2}, 1);
    g.add_term({1, 1}, 1);
    g.add_term({2, 0}, 1);
    REQUIRE(format_poly(g) == "t1^2 + t1*t2 + t2^2");
}

TEST_CASE("polynomial parsing", "[format]") {
    Ring gf3 = Ring::prime_field(3);
    auto f = parse_poly(gf3, "t1^3");
    REQUIRE(f.nvars() == 1);
    REQUIRE(f.coeff({3}) == 1);

    auto g = parse_poly(gf3, "2*t1^2*t2 + t1 + 2", 2);
    REQUIRE(g.coeff({2, 1}) == 2);
    REQUIRE(g.coeff({1, 0}) == 1);
    REQUIRE(g.coeff({0, 0}) == 2);

    // '-' negates in the ring.
    auto h = parse_poly(gf3, "t1 - t2", 2);
    REQUIRE(h.coeff({1, 0}) == 1);
    REQUIRE(h.coeff({0, 1}) == 2);

    // Like terms merge; cancellation drops terms.
    auto k = parse_poly(gf3, "t1 + 2*t1", 1);
    REQUIRE(k.is_zero());

    // Extension-field coefficients.
    Ring gf4 = Ring::extension_field(2, 2);
    auto m = parse_poly(gf4, "[1,1]*t1*t2 + [0,1]", 2);
    REQUIRE(m.coeff({1, 1}) == gf4.from_coeffs({1, 1}));
    REQUIRE(m.coeff({0, 0}) == gf4.from_coeffs({0, 1}));

    REQUIRE_THROWS_AS(parse_poly(gf3, ""), ParseError);
    REQUIRE_THROWS_AS(parse_poly(gf3, "t"), ParseError);
    REQUIRE_THROWS_AS(parse_poly(gf3, "t1 t2", 2), ParseError);
    REQUIRE_THROWS_AS(parse_poly(gf3, "t1 ++ t2", 2), ParseError);
    REQUIRE_THROWS_AS(parse_poly(gf3, "t3", 2), ParseError);
    REQUIRE_THROWS_AS(parse_poly(gf3, "2*", 1), ParseError);
}

TEST_CASE("parser and formatter round-trip", "[format]") {
    Rng rng(321);
    for (const Ring& ring : {Ring::prime_field(3), Ring::modular(6), Ring::extension_field(2, 2)}) {
        for (int trial = 0; trial < 120; ++trial) {
            auto f = random_poly(ring, 3, 4, 5, rng);
            if (f.is_zero()) continue;
            auto text = format_poly(f);
            auto parsed = parse_poly(ring, text, 3);
            REQUIRE(parsed == f);
            REQUIRE(format_poly(parsed) == text);
        }
    }
}

TEST_CASE("grid JSON round-trips", "[format]") {
    auto j = nlohmann::json::parse(R"({"ring":"GF:5","sets":[[0,1,2],[0,1,2]]})");
    GridSpec grid = grid_from_json(j);
    REQUIRE(grid.nvars() == 2);
    REQUIRE(grid.sizes() == std::vector<long long>{3, 3});
    REQUIRE(grid.condition_d_all());

    auto round = grid_to_json(grid);
    REQUIRE(grid_from_json(nlohmann::json::parse(round.dump())) == grid);

    auto jext = nlohmann::json::parse(R"({"ring":"GF:2^2","sets":[[[0,0],[1,0]],[[0,1]]]})");
    GridSpec egrid = grid_from_json(jext);
    REQUIRE(egrid.set(0).elems == std::vector<Elem>{0, 2});
    REQUIRE(egrid.set(1).elems == std::vector<Elem>{1});

    REQUIRE_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"sets":[]})")), ParseError);
    REQUIRE_THROWS_AS(
        grid_from_json(nlohmann::json::parse(R"({"ring":"GF:3","sets":[[0,0]]})")),
        DomainError);
}

TEST_CASE("point parsing splits on top-level commas", "[format]") {
    Ring gf9 = Ring::extension_field(3, 2);
    auto pt = parse_point(gf9, "[1,2],[0,1]");
    REQUIRE(pt.size() == 2);
    REQUIRE(gf9.coeffs(pt[0]) == std::vector<std::uint32_t>{1, 2});
    REQUIRE(gf9.coeffs(pt[1]) == std::vector<std::uint32_t>{0, 1});

    Ring gf3 = Ring::prime_field(3);
    REQUIRE(parse_point(gf3, "1,2") == std::vector<Elem>{1, 2});
}

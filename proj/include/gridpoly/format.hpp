#pragma once

// Text and JSON wire formats: ring syntax ("GF:3", "GF:2^3:1,1,0,1",
// "Z:6"), element literals (plain integer or bracketed low-degree-first
// coefficient list), the polynomial term format, and grid files.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gridpoly/poly.hpp"
#include "gridpoly/ring.hpp"

namespace gridpoly {

inline std::string format_ring(const Ring& r) {
    std::ostringstream os;
    switch (r.kind()) {
        case Ring::Kind::PrimeField:
            os << "GF:" << r.prime();
            break;
        case Ring::Kind::ExtensionField: {
            os << "GF:" << r.prime() << "^" << r.ext_degree() << ":";
            const auto& mod = r.modulus();
            for (std::size_t i = 0; i < mod.size(); ++i) {
                if (i) os << ",";
                os << mod[i];
            }
            break;
        }
        case Ring::Kind::Modular:
            os << "Z:" << r.cardinality();
            break;
    }
    return os.str();
}

namespace format_detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::uint64_t parse_u64(std::string_view s, const char* what) {
    if (s.empty()) throw ParseError(std::string("empty ") + what);
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(std::string("bad ") + what + ": '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace format_detail

inline Ring parse_ring(std::string_view text, std::uint64_t card_limit = kDefaultRingCardLimit) {
    using format_detail::parse_u64;
    if (text.rfind("GF:", 0) == 0) {
        const std::string_view rest = text.substr(3);
        const auto caret = rest.find('^');
        if (caret == std::string_view::npos)
            return Ring::prime_field(parse_u64(rest, "field size"), card_limit);
        const std::uint64_t p = parse_u64(rest.substr(0, caret), "characteristic");
        const std::string_view tail = rest.substr(caret + 1);
        const auto colon = tail.find(':');
        const std::uint64_t k = parse_u64(
            colon == std::string_view::npos ? tail : tail.substr(0, colon), "extension degree");
        if (k == 0 || k > 64) throw ParseError("bad extension degree");
        if (colon == std::string_view::npos)
            return Ring::extension_field(p, static_cast<unsigned>(k), card_limit);
        std::vector<std::uint32_t> mod;
        for (const auto& part : format_detail::split(tail.substr(colon + 1), ','))
            mod.push_back(static_cast<std::uint32_t>(parse_u64(part, "modulus coefficient")));
        return Ring::extension_field(p, static_cast<unsigned>(k), std::move(mod), card_limit);
    }
    if (text.rfind("Z:", 0) == 0)
        return Ring::modular(parse_u64(text.substr(2), "modulus"), card_limit);
    throw ParseError("unknown ring syntax: '" + std::string(text) + "' (expected GF:p, GF:p^k[:coeffs], Z:m)");
}

inline std::string format_element(const Ring& r, Elem x) {
    r.check(x);
    if (r.kind() != Ring::Kind::ExtensionField) return std::to_string(x);
    std::ostringstream os;
    os << "[";
    const auto c = r.coeffs(x);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << "]";
    return os.str();
}

inline Elem parse_element(const Ring& r, std::string_view text) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty()) throw ParseError("empty element literal");
    if (trimmed.front() == '[') {
        if (r.kind() != Ring::Kind::ExtensionField)
            throw ParseError("bracketed literals are for extension fields");
        if (trimmed.back() != ']') throw ParseError("unterminated element literal");
        std::vector<std::uint32_t> coeffs;
        for (const auto& part : format_detail::split(
                 std::string_view(trimmed).substr(1, trimmed.size() - 2), ','))
            coeffs.push_back(static_cast<std::uint32_t>(
                format_detail::parse_u64(part, "coefficient") % r.prime()));
        if (coeffs.size() != r.ext_degree()) throw ParseError("coefficient list has wrong length");
        return r.from_coeffs(coeffs);
    }
    const std::uint64_t v = format_detail::parse_u64(trimmed, "element");
    if (r.kind() == Ring::Kind::ExtensionField)
        return r.from_int(static_cast<long long>(v % r.prime()));
    return static_cast<Elem>(v % r.cardinality());
}

// Presentation order for terms: total degree descending, then
// t1-major within a degree.
struct DisplayTermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

inline std::string format_poly(const SparsePoly& f) {
    if (f.is_zero()) return "0";
    std::vector<const std::pair<const Monomial, Elem>*> terms;
    for (const auto& t : f.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
        return DisplayTermOrder{}(a->first, b->first);
    });
    std::ostringstream os;
    bool first_term = true;
    for (const auto* t : terms) {
        const auto& [m, c] = *t;
        if (!first_term) os << " + ";
        first_term = false;
        const bool has_vars = monomial_degree(m) > 0;
        if (!has_vars || c != f.ring().one()) {
            os << format_element(f.ring(), c);
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int v = 0; v < f.nvars(); ++v) {
            if (m[v] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "t" << (v + 1);
            if (m[v] > 1) os << "^" << m[v];
        }
    }
    return os.str();
}

// Parses the term format "c*t1^e1*t2^e2 + ...".  Unit coefficients and
// zero exponents may be omitted; '-' starts a negated term.  When nvars
// is negative it is inferred as the largest variable index.
inline SparsePoly parse_poly(const Ring& ring, std::string_view text, int nvars = -1) {
    struct RawTerm {
        bool negative = false;
        bool has_coeff = false;
        Elem coeff = 0;
        std::vector<std::pair<int, std::uint32_t>> powers;  // (0-based var, exponent)
    };
    std::vector<RawTerm> raw;
    int max_var = 0;

    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty polynomial");
    bool expect_term = true;
    while (i < text.size()) {
        RawTerm term;
        if (text[i] == '+' || text[i] == '-') {
            if (expect_term && text[i] == '+') throw ParseError("unexpected '+'");
            term.negative = text[i] == '-';
            ++i;
            skip_ws();
        } else if (!expect_term) {
            throw ParseError("expected '+' or '-' between terms");
        }
        bool expect_factor = true;
        while (true) {
            skip_ws();
            if (i >= text.size()) break;
            const char c = text[i];
            if (c == '+' || c == '-') break;
            if (c == '*') {
                if (expect_factor) throw ParseError("unexpected '*'");
                ++i;
                expect_factor = true;
                continue;
            }
            if (!expect_factor) throw ParseError("missing '*' between factors");
            expect_factor = false;
            if (c == 't') {
                ++i;
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw ParseError("variable needs an index, e.g. t1");
                const int var = static_cast<int>(
                    format_detail::parse_u64(text.substr(start, i - start), "variable index"));
                if (var < 1) throw ParseError("variable indices start at 1");
                std::uint32_t exp = 1;
                skip_ws();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip_ws();
                    std::size_t estart = i;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    exp = static_cast<std::uint32_t>(
                        format_detail::parse_u64(text.substr(estart, i - estart), "exponent"));
                }
                max_var = std::max(max_var, var);
                term.powers.emplace_back(var - 1, exp);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '[') {
                if (term.has_coeff) throw ParseError("term has two coefficients");
                std::size_t start = i;
                if (c == '[') {
                    while (i < text.size() && text[i] != ']') ++i;
                    if (i == text.size()) throw ParseError("unterminated element literal");
                    ++i;
                } else {
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                }
                term.has_coeff = true;
                term.coeff = parse_element(ring, text.substr(start, i - start));
            } else {
                throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
            }
        }
        if (!term.has_coeff && term.powers.empty()) throw ParseError("empty term");
        if (expect_factor) throw ParseError("dangling '*' at end of term");
        raw.push_back(std::move(term));
        expect_term = false;
        skip_ws();
    }

    if (nvars < 0) nvars = max_var;
    if (max_var > nvars) throw ParseError("variable index exceeds the declared variable count");
    SparsePoly f(ring, nvars);
    for (const auto& term : raw) {
        Monomial m(nvars, 0);
        for (const auto& [v, e] : term.powers) m[v] += e;
        Elem c = term.has_coeff ? term.coeff : ring.one();
        if (term.negative) c = ring.neg(c);
        f.add_term(std::move(m), c);
    }
    return f;
}

inline nlohmann::ordered_json element_to_json(const Ring& r, Elem x) {
    r.check(x);
    if (r.kind() != Ring::Kind::ExtensionField) return x;
    return r.coeffs(x);
}

inline Elem element_from_json(const Ring& r, const nlohmann::json& j) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        if (r.kind() == Ring::Kind::ExtensionField)
            throw ParseError("extension-field elements must be coefficient arrays");
        const long long v = j.get<long long>();
        if (v < 0 || static_cast<std::uint64_t>(v) >= r.cardinality())
            throw ParseError("element out of range");
        return static_cast<Elem>(v);
    }
    if (j.is_array()) {
        if (r.kind() != Ring::Kind::ExtensionField)
            throw ParseError("coefficient arrays are for extension fields");
        std::vector<std::uint32_t> coeffs;
        for (const auto& c : j) coeffs.push_back(c.get<std::uint32_t>());
        return r.from_coeffs(coeffs);
    }
    if (j.is_string()) return parse_element(r, j.get<std::string>());
    throw ParseError("bad element encoding in JSON");
}

// Grid file: { "ring": "...", "sets": [[elem, ...], ...] }
inline GridSpec grid_from_json(const nlohmann::json& j,
                               std::uint64_t card_limit = kDefaultRingCardLimit) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("sets"))
        throw ParseError("grid file needs 'ring' and 'sets'");
    Ring ring = parse_ring(j.at("ring").get<std::string>(), card_limit);
    std::vector<CoordinateSet> sets;
    for (const auto& sj : j.at("sets")) {
        std::vector<Elem> elems;
        for (const auto& ej : sj) elems.push_back(element_from_json(ring, ej));
        sets.emplace_back(ring, std::move(elems));
    }
    return GridSpec(std::move(ring), std::move(sets));
}

inline nlohmann::ordered_json grid_to_json(const GridSpec& grid) {
    nlohmann::ordered_json j;
    j["ring"] = format_ring(grid.ring());
    auto sets = nlohmann::ordered_json::array();
    for (const auto& s : grid.sets()) {
        auto arr = nlohmann::ordered_json::array();
        for (Elem e : s.elems) arr.push_back(element_to_json(grid.ring(), e));
        sets.push_back(std::move(arr));
    }
    j["sets"] = std::move(sets);
    return j;
}

// Splits "1,2,[1,0],3" on top-level commas (brackets protect commas).
inline std::vector<std::string> split_top_level(std::string_view s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::vector<Elem> parse_point(const Ring& ring, std::string_view text) {
    std::vector<Elem> pt;
    for (const auto& part : split_top_level(text)) pt.push_back(parse_element(ring, part));
    return pt;
}

}  // namespace gridpoly

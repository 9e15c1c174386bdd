// gridpoly: zero-count bounds for polynomials on finite grids, with
// balls-in-bins minimization, grid codes, finite-geometry searches, and an
// exhaustive verification engine.
//
// Subcommands: bins, bound, reduce, eval, verify, codes, geom.
// Exit codes: 0 success, 1 domain error, 2 cap exceeded, 3 bound violation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridpoly/bins.hpp"
#include "gridpoly/bounds.hpp"
#include "gridpoly/codes.hpp"
#include "gridpoly/format.hpp"
#include "gridpoly/geometry.hpp"
#include "gridpoly/oracle.hpp"
#include "gridpoly/poly.hpp"

using json = nlohmann::ordered_json;
using namespace gridpoly;

namespace {

struct GlobalConfig {
    std::uint64_t cap = kDefaultEnumCap;
    std::uint64_t seed = 0;  // fixed default; never time-based
    std::string output = "table";
    std::string out_path;
    int threads = 1;
    bool timing = false;

    bool json_mode() const { return output == "json"; }
};

// Exactly one JSON document per invocation; files are written via a
// temporary and renamed so errors never leave partial output.
void emit(const GlobalConfig& cfg, const json& doc, const std::string& table_text) {
    std::string payload = cfg.json_mode() ? doc.dump(2) + "\n" : table_text;
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    const std::string tmp = cfg.out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw DomainError("cannot open output file: " + cfg.out_path);
        f << payload;
    }
    if (std::rename(tmp.c_str(), cfg.out_path.c_str()) != 0)
        throw DomainError("cannot rename output file into place");
}

std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    for (const auto& part : format_detail::split(text, ',')) {
        try {
            out.push_back(std::stoll(part));
        } catch (const std::exception&) {
            throw ParseError(std::string("bad ") + what + ": '" + part + "'");
        }
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open file: " + path);
    try {
        return json::parse(f);
    } catch (const std::exception& e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }
}

GridSpec load_grid(const GlobalConfig& cfg, const std::string& grid_path,
                   const std::string& ring_text, int dims) {
    if (!grid_path.empty()) return grid_from_json(read_json_file(grid_path));
    if (ring_text.empty()) throw DomainError("need --grid or --ring");
    if (dims < 1) throw DomainError("need --dims >= 1 with --ring");
    Ring ring = parse_ring(ring_text);
    if (ring.cardinality() > cfg.cap) throw CapExceeded("ring too large to enumerate");
    return GridSpec::full(ring, dims);
}

// ---------------------------------------------------------------- bins --

struct BinsArgs {
    std::string caps, prefill, total;
    bool witness = false;
};

int run_bins(const GlobalConfig& cfg, const BinsArgs& args) {
    bins::BinProfile profile;
    profile.caps = parse_ll_list(args.caps, "capacity");
    profile.prefills = args.prefill.empty() ? std::vector<long long>(profile.caps.size(), 1)
                                            : parse_ll_list(args.prefill, "prefill");
    profile.total = std::stoll(args.total);
    const Big value = bins::min_product(profile);

    json doc;
    doc["caps"] = profile.caps;
    doc["prefills"] = profile.prefills;
    doc["total"] = profile.total;
    doc["value"] = value.str();
    std::ostringstream table;
    table << value.str() << "\n";
    if (args.witness) {
        const auto [v, dist] = bins::brute_force_min_product(profile, cfg.cap);
        doc["witness"] = dist.counts;
        json w;
        w["counts"] = dist.counts;
        table << w.dump() << "\n";
    }
    emit(cfg, doc, table.str());
    return 0;
}

// --------------------------------------------------------------- bound --

struct BoundArgs {
    std::string theorem, grid_path, ring, poly, prefill, chain, dvec;
    int dims = 0;
    long long deg = -1;
    long long order = -1;
};

int run_bound(const GlobalConfig& cfg, const BoundArgs& args) {
    const GridSpec grid = load_grid(cfg, args.grid_path, args.ring, args.dims);
    const auto sizes = grid.sizes();
    std::optional<SparsePoly> poly;
    if (!args.poly.empty()) poly = parse_poly(grid.ring(), args.poly, grid.nvars());

    long long deg = args.deg;
    std::vector<long long> chain, dvec;
    if (poly) {
        if (poly->is_zero()) throw DomainError("the zero polynomial has no degree data");
        deg = *poly->total_degree();
        const auto lc = leading_coeff_chain(*poly).degrees;
        chain.assign(lc.begin(), lc.end());
        for (int i = 0; i < grid.nvars(); ++i) dvec.push_back(poly->degree_in(i).value_or(0));
    } else {
        if (!args.chain.empty()) chain = parse_ll_list(args.chain, "chain degree");
        if (!args.dvec.empty()) dvec = parse_ll_list(args.dvec, "per-variable degree");
    }
    auto need_deg = [&] {
        if (deg < 0) throw DomainError("need --poly or --deg");
        return deg;
    };
    auto need_chain = [&]() -> const std::vector<long long>& {
        if (chain.empty()) throw DomainError("need --poly or --chain");
        return chain;
    };
    auto need_dvec = [&]() -> const std::vector<long long>& {
        if (dvec.empty()) throw DomainError("need --poly or --dvec");
        return dvec;
    };

    bounds::BoundResult result;
    if (args.theorem == "af") {
        result = bounds::alon_furedi_nonzeros(sizes, need_deg());
    } else if (args.theorem == "gaf") {
        const auto prefills = args.prefill.empty()
                                  ? std::vector<long long>(sizes.size(), 1)
                                  : parse_ll_list(args.prefill, "prefill");
        result = bounds::generalized_af_nonzeros(sizes, prefills, need_deg());
    } else if (args.theorem == "schwartz") {
        result = bounds::schwartz_zeros(sizes, need_chain());
    } else if (args.theorem == "sz") {
        auto sorted = sizes;
        std::sort(sorted.rbegin(), sorted.rend());
        result = bounds::sz_zeros(sorted, need_deg());
    } else if (args.theorem == "dmlz") {
        for (const auto& s : sizes)
            if (s != sizes[0]) throw DomainError("dmlz needs a power grid S^n");
        const auto& dv = need_dvec();
        const long long cap = *std::max_element(dv.begin(), dv.end());
        result = bounds::dmlz_zeros(sizes[0], grid.nvars(), cap);
    } else if (args.theorem == "gdmlz") {
        result = bounds::generalized_dmlz_nonzeros(sizes, need_dvec());
    } else if (args.theorem == "klp") {
        for (const auto& s : sizes)
            if (s != sizes[0]) throw DomainError("klp needs the full grid GF(q)^n");
        const long long d = args.order >= 0 ? args.order : need_deg();
        result = bounds::klp_min_weight(grid.nvars(), sizes[0], d);
    } else if (args.theorem == "mult-schwartz") {
        result = bounds::mult_schwartz_bound(sizes, need_chain());
    } else if (args.theorem == "mult-gsz") {
        auto sorted = sizes;
        std::sort(sorted.rbegin(), sorted.rend());
        result = bounds::mult_gsz_bound(sorted, need_deg());
    } else {
        throw DomainError("unknown theorem: " + args.theorem);
    }

    json doc;
    doc["theorem"] = result.theorem;
    doc["direction"] = bounds::direction_name(result.direction);
    doc["applicable"] = result.applicable;
    if (result.applicable)
        doc["value"] = result.value;
    else
        doc["reason"] = result.reason;
    std::ostringstream table;
    if (result.applicable)
        table << result.theorem << " " << bounds::direction_name(result.direction) << " "
              << result.value << "\n";
    else
        table << result.theorem << " inapplicable: " << result.reason << "\n";
    emit(cfg, doc, table.str());
    return result.applicable ? 0 : 1;
}

// -------------------------------------------------------- reduce / eval --

int run_reduce(const GlobalConfig& cfg, const std::string& grid_path, const std::string& ring,
               int dims, const std::string& poly_text) {
    const GridSpec grid = load_grid(cfg, grid_path, ring, dims);
    const SparsePoly f = parse_poly(grid.ring(), poly_text, grid.nvars());
    const SparsePoly r = grid_reduce(f, grid);
    json doc;
    doc["ring"] = format_ring(grid.ring());
    doc["poly"] = format_poly(f);
    doc["reduced"] = format_poly(r);
    emit(cfg, doc, format_poly(r) + "\n");
    return 0;
}

int run_eval(const GlobalConfig& cfg, const std::string& grid_path, const std::string& ring,
             int dims, const std::string& poly_text, const std::string& point_text) {
    Ring r = grid_path.empty() && dims == 0 && !ring.empty()
                 ? parse_ring(ring)
                 : load_grid(cfg, grid_path, ring, dims).ring();
    const auto point = parse_point(r, point_text);
    const SparsePoly f = parse_poly(r, poly_text, static_cast<int>(point.size()));
    const Elem v = f.evaluate(point);
    json doc;
    doc["ring"] = format_ring(r);
    doc["poly"] = format_poly(f);
    doc["value"] = element_to_json(r, v);
    emit(cfg, doc, format_element(r, v) + "\n");
    return 0;
}

// -------------------------------------------------------------- verify --

struct VerifyArgs {
    std::string suite = "all";
    std::string ring, grid_path, prefill;
    int dims = 0;
    long long max_deg = -1;
    std::uint64_t samples = 10000;
};

int run_verify(const GlobalConfig& cfg, const VerifyArgs& args) {
    const GridSpec grid = load_grid(cfg, args.grid_path, args.ring, args.dims);
    long long slack_default = 0;
    for (long long a : grid.sizes()) slack_default += a - 1;
    const long long max_deg = args.max_deg >= 0 ? args.max_deg : slack_default;

    oracle::FamilySpec family{grid, max_deg, std::nullopt,
                              oracle::CoefficientSource::exhaustive_source()};
    if (!args.prefill.empty()) {
        const auto prefills = parse_ll_list(args.prefill, "prefill");
        if (static_cast<int>(prefills.size()) != grid.nvars())
            throw DomainError("prefill count mismatch");
        std::vector<long long> caps(prefills.size());
        for (std::size_t i = 0; i < prefills.size(); ++i)
            caps[i] = grid.sizes()[i] - prefills[i];
        family.per_var_caps = caps;
    }
    // Exhaustive when the coefficient space fits the cap, else seeded draws.
    {
        Big space = 1;
        bool fits = true;
        oracle::detail::FamilyContext probe = oracle::detail::build_context(family, cfg.cap);
        for (std::size_t j = 0; j < probe.basis.size(); ++j) {
            space *= probe.card;
            if (space > cfg.cap) {
                fits = false;
                break;
            }
        }
        if (!fits)
            family.coeffs = oracle::CoefficientSource::random_source(cfg.seed, args.samples);
    }

    std::vector<oracle::Theorem> suites;
    if (args.suite == "all") {
        suites = {oracle::Theorem::AF,     oracle::Theorem::GAF,
                  oracle::Theorem::Schwartz, oracle::Theorem::SZ,
                  oracle::Theorem::DMLZ,   oracle::Theorem::GDMLZ,
                  oracle::Theorem::MultSchwartz, oracle::Theorem::MultGSZ,
                  oracle::Theorem::DKSS,   oracle::Theorem::Petrov};
    } else if (args.suite == "mult") {
        suites = {oracle::Theorem::MultSchwartz, oracle::Theorem::MultGSZ};
    } else {
        const std::vector<std::pair<std::string, oracle::Theorem>> names = {
            {"af", oracle::Theorem::AF},         {"gaf", oracle::Theorem::GAF},
            {"schwartz", oracle::Theorem::Schwartz}, {"sz", oracle::Theorem::SZ},
            {"dmlz", oracle::Theorem::DMLZ},     {"gdmlz", oracle::Theorem::GDMLZ},
            {"dkss", oracle::Theorem::DKSS},     {"petrov", oracle::Theorem::Petrov}};
        bool found = false;
        for (const auto& [name, t] : names)
            if (name == args.suite) {
                suites = {t};
                found = true;
            }
        if (!found) throw DomainError("unknown suite: " + args.suite);
    }

    oracle::VerifyOptions options;
    options.threads = cfg.threads;
    options.cap = cfg.cap;

    std::uint64_t total_violations = 0;
    json docs = json::array();
    std::ostringstream table;
    for (oracle::Theorem t : suites) {
        auto report = oracle::verify(t, family, options);
        total_violations += report.violation_count;
        if (!cfg.timing) report.elapsed_ms = 0;
        docs.push_back(oracle::report_to_json(report));
        table << report.theorem << ": checked " << report.checked << ", skipped "
              << report.skipped << ", violations " << report.violation_count << ", tight "
              << report.tight.size() << "\n";
    }
    emit(cfg, docs.size() == 1 ? docs[0] : docs, table.str());
    return total_violations == 0 ? 0 : 3;
}

// --------------------------------------------------------------- codes --

struct CodesArgs {
    std::string kind = "grm";
    std::string ring, grid_path, prefill;
    int dims = 0;
    long long order = 0;
    std::string method = "both";  // mindist
    std::string matrix_out;       // genmat
};

codes::CodeSpec make_code_spec(const GlobalConfig& cfg, const CodesArgs& args) {
    if (args.kind == "grm") {
        if (args.ring.empty() || args.dims < 1) throw DomainError("grm needs --ring and --dims");
        return codes::CodeSpec::grm(parse_ring(args.ring), args.dims, args.order);
    }
    GridSpec grid = load_grid(cfg, args.grid_path, args.ring, args.dims);
    if (args.kind == "agc") return codes::CodeSpec::agc(std::move(grid), args.order);
    if (args.kind == "gagc") {
        const auto prefills = args.prefill.empty()
                                  ? std::vector<long long>(grid.nvars(), 1)
                                  : parse_ll_list(args.prefill, "prefill");
        return codes::CodeSpec::gagc(std::move(grid), args.order, prefills);
    }
    throw DomainError("unknown code kind: " + args.kind);
}

int run_codes_mindist(const GlobalConfig& cfg, const CodesArgs& args) {
    const auto spec = make_code_spec(cfg, args);
    json doc;
    doc["kind"] = codes::kind_name(spec.kind);
    doc["ring"] = format_ring(spec.grid.ring());
    doc["order"] = spec.order;
    doc["prefills"] = spec.prefills;
    std::ostringstream table;
    std::optional<Big> formula;
    if (args.method == "formula" || args.method == "both") {
        formula = codes::min_weight_formula(spec);
        doc["formula"] = formula->str();
        table << "formula " << formula->str() << "\n";
    }
    if (args.method == "brute" || args.method == "both") {
        const auto bf = codes::min_weight_bruteforce(spec, cfg.cap);
        doc["brute"] = bf.weight;
        json word = json::array();
        for (Elem e : bf.codeword) word.push_back(element_to_json(spec.grid.ring(), e));
        doc["witness"] = std::move(word);
        table << "brute " << bf.weight << "\n";
        if (formula && Big(bf.weight) != *formula)
            throw BoundViolation("minimum-weight formula disagrees with brute force");
        if (formula) doc["agree"] = true;
    }
    emit(cfg, doc, table.str());
    return 0;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n ") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

int run_codes_genmat(const GlobalConfig& cfg, const CodesArgs& args) {
    const auto spec = make_code_spec(cfg, args);
    const auto g = codes::generator_matrix(spec, cfg.cap);
    const Ring& ring = spec.grid.ring();
    std::ostringstream csv;
    csv << "monomial";
    spec.grid.for_each_point([&](const std::vector<Elem>& pt) {
        std::string label = "(";
        for (std::size_t i = 0; i < pt.size(); ++i) {
            if (i) label += ",";
            label += format_element(ring, pt[i]);
        }
        label += ")";
        csv << "," << csv_quote(label);
    });
    csv << "\n";
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        SparsePoly mono = SparsePoly::monomial(ring, spec.grid.nvars(), g.basis[r], ring.one());
        csv << csv_quote(format_poly(mono));
        for (Elem e : g.rows[r]) csv << "," << csv_quote(format_element(ring, e));
        csv << "\n";
    }
    const std::string payload = csv.str();
    if (!args.matrix_out.empty()) {
        const std::string tmp = args.matrix_out + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw DomainError("cannot open output file: " + args.matrix_out);
            f << payload;
        }
        if (std::rename(tmp.c_str(), args.matrix_out.c_str()) != 0)
            throw DomainError("cannot rename output file into place");
        json doc;
        doc["rows"] = g.rows.size();
        doc["cols"] = g.ncols;
        doc["out"] = args.matrix_out;
        emit(cfg, doc, "wrote " + std::to_string(g.rows.size()) + "x" +
                           std::to_string(g.ncols) + " matrix to " + args.matrix_out + "\n");
    } else {
        json doc;
        doc["rows"] = g.rows.size();
        doc["cols"] = g.ncols;
        doc["csv"] = payload;
        emit(cfg, doc, payload);
    }
    return 0;
}

int run_codes_dim(const GlobalConfig& cfg, const CodesArgs& args) {
    const auto spec = make_code_spec(cfg, args);
    const auto basis = codes::monomial_basis(spec);
    json doc;
    doc["kind"] = codes::kind_name(spec.kind);
    doc["dimension"] = basis.size();
    emit(cfg, doc, std::to_string(basis.size()) + "\n");
    return 0;
}

// ---------------------------------------------------------------- geom --

struct GeomArgs {
    std::string action;  // holes | missing | blocking | tangent | cover-min
    std::string space = "PG";
    int n = 2;
    std::uint64_t q = 3;
    std::string cover_path, set_path, grid_path;
    long long max_size = -1;
};

Ring geom_field(std::uint64_t q) {
    for (std::uint64_t p = 2; p <= q; ++p) {
        if (!ring_detail::is_prime(p)) continue;
        std::uint64_t power = p;
        unsigned k = 1;
        while (power < q) {
            power *= p;
            ++k;
        }
        if (power == q) return k == 1 ? Ring::prime_field(p) : Ring::extension_field(p, k);
    }
    throw DomainError("q must be a prime power");
}

std::vector<geom::Vec> load_point_set(const Ring& ring, const std::string& path) {
    std::vector<geom::Vec> pts;
    for (const auto& row : read_json_file(path)) {
        geom::Vec v;
        for (const auto& e : row) v.push_back(element_from_json(ring, e));
        pts.push_back(std::move(v));
    }
    return pts;
}

json vec_to_json(const Ring& ring, const geom::Vec& v) {
    json a = json::array();
    for (Elem e : v) a.push_back(element_to_json(ring, e));
    return a;
}

int run_geom(const GlobalConfig& cfg, const GeomArgs& args) {
    if (args.action == "cover-min") {
        GridSpec grid = args.grid_path.empty()
                            ? GridSpec::full(geom_field(args.q), args.n)
                            : grid_from_json(read_json_file(args.grid_path));
        if (!args.grid_path.empty() || args.space == "AG") {
            const auto r = geom::grid_cover_min(grid, cfg.cap);
            json doc;
            doc["min_cover"] = r.size;
            json witness = json::array();
            for (const auto& [coeffs, constant] : r.witness) {
                json h;
                h["coeffs"] = vec_to_json(grid.ring(), coeffs);
                h["constant"] = element_to_json(grid.ring(), constant);
                witness.push_back(std::move(h));
            }
            doc["witness"] = std::move(witness);
            emit(cfg, doc, std::to_string(r.size) + "\n");
            return 0;
        }
        throw DomainError("cover-min works on grids (use --space AG or --grid)");
    }

    Ring field = geom_field(args.q);
    const geom::SpaceKind kind = args.space == "AG" ? geom::SpaceKind::AG : geom::SpaceKind::PG;
    geom::Space space{kind, args.n, field};

    if (args.action == "holes") {
        if (args.cover_path.empty()) throw DomainError("holes needs --cover");
        geom::CoverSpec cover{space, {}, {}};
        if (kind == geom::SpaceKind::PG) {
            for (const auto& h : load_point_set(field, args.cover_path))
                cover.pg_hyperplanes.push_back(geom::normalize_projective(field, h));
        } else {
            for (const auto& h : load_point_set(field, args.cover_path)) {
                if (h.size() != static_cast<std::size_t>(args.n) + 1)
                    throw DomainError("affine hyperplane rows are [c_1..c_n, r]");
                geom::Vec coeffs(h.begin(), h.end() - 1);
                cover.ag_hyperplanes.push_back(
                    geom::normalize_affine(field, std::move(coeffs), h.back()));
            }
        }
        const auto hs = geom::holes(cover, cfg.cap);
        json doc;
        doc["space"] = args.space;
        doc["count"] = hs.size();
        json list = json::array();
        for (const auto& p : hs) list.push_back(vec_to_json(field, p));
        doc["holes"] = std::move(list);
        std::ostringstream table;
        table << hs.size() << " hole(s)\n";
        if (kind == geom::SpaceKind::PG) {
            const std::size_t k =
                cover.pg_hyperplanes.size();
            const Big bound = geom::holes_lower_bound(args.n, args.q, static_cast<long long>(k));
            doc["bound"] = bound.str();
            table << "bound " << bound.str() << "\n";
        }
        emit(cfg, doc, table.str());
        return 0;
    }

    if (args.action == "missing") {
        if (args.set_path.empty()) throw DomainError("missing needs --set");
        if (kind != geom::SpaceKind::AG) throw DomainError("missing works in AG(n,q)");
        const auto s = load_point_set(field, args.set_path);
        const auto out = geom::missing_hyperplanes(field, args.n, s, cfg.cap);
        json doc;
        doc["count"] = out.count;
        doc["bound"] = out.bound.str();
        emit(cfg, doc,
             "missing " + std::to_string(out.count) + ", bound " + out.bound.str() + "\n");
        return 0;
    }

    if (args.action == "blocking") {
        if (!args.set_path.empty()) {
            auto b = load_point_set(field, args.set_path);
            if (kind == geom::SpaceKind::PG)
                for (auto& p : b) p = geom::normalize_projective(field, p);
            const bool blocking = geom::is_blocking_set(space, b, cfg.cap);
            json doc;
            doc["is_blocking"] = blocking;
            if (blocking && kind == geom::SpaceKind::PG) {
                json ess = json::array();
                for (const auto& p : geom::essential_points(space, b, cfg.cap))
                    ess.push_back(vec_to_json(field, p));
                doc["essential_points"] = std::move(ess);
            }
            emit(cfg, doc, std::string(blocking ? "blocking" : "not blocking") + "\n");
            return blocking ? 0 : 1;
        }
        if (args.max_size < 1) throw DomainError("blocking needs --set or --max-size");
        const auto found = geom::min_blocking_search(space, args.max_size, cfg.cap);
        json doc;
        if (found) {
            doc["size"] = found->size;
            json w = json::array();
            for (const auto& p : found->witness) w.push_back(vec_to_json(field, p));
            doc["witness"] = std::move(w);
            emit(cfg, doc, "minimum blocking set size " + std::to_string(found->size) + "\n");
        } else {
            doc["size"] = nullptr;
            emit(cfg, doc,
                 "no blocking set of size at most " + std::to_string(args.max_size) + "\n");
        }
        return 0;
    }

    if (args.action == "tangent") {
        if (args.set_path.empty()) throw DomainError("tangent needs --set");
        if (kind != geom::SpaceKind::PG) throw DomainError("tangent works in PG(n,q)");
        auto b = load_point_set(field, args.set_path);
        for (auto& p : b) p = geom::normalize_projective(field, p);
        json list = json::array();
        std::ostringstream table;
        const auto essentials = geom::essential_points(space, b, cfg.cap);
        for (const auto& x : essentials) {
            const auto tc = geom::tangent_count(space, b, x, cfg.cap);
            json row;
            row["point"] = vec_to_json(field, x);
            row["count"] = tc.count;
            row["bound"] = tc.bound.str();
            list.push_back(std::move(row));
            table << "count " << tc.count << " bound " << tc.bound.str() << "\n";
        }
        json doc;
        doc["essential"] = std::move(list);
        emit(cfg, doc, table.str());
        return 0;
    }

    throw DomainError("unknown geom action: " + args.action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-count bounds for polynomials on finite grids"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    if (const char* env_cap = std::getenv("GRIDPOLY_CAP")) {
        try {
            cfg.cap = std::stoull(env_cap);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring bad GRIDPOLY_CAP\n";
        }
    }
    app.add_option("--cap", cfg.cap, "enumeration cap");
    app.add_option("--seed", cfg.seed, "seed for randomized scans (default 0)");
    app.add_option("--output", cfg.output, "output mode: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--out", cfg.out_path, "write output to a file (atomically)");
    app.add_option("--threads", cfg.threads, "worker threads for scans");
    app.add_flag("--timing", cfg.timing, "include wall-clock timings in reports");

    BinsArgs bins_args;
    auto* bins_cmd = app.add_subcommand("bins", "balls-in-prefilled-bins minimum");
    bins_cmd->add_option("--caps", bins_args.caps, "capacities a_1,...,a_n")->required();
    bins_cmd->add_option("--prefill", bins_args.prefill, "prefills b_1,...,b_n (default all 1)");
    bins_cmd->add_option("--total", bins_args.total, "ball count N")->required();
    bins_cmd->add_flag("--witness", bins_args.witness, "also print an argmin distribution");

    BoundArgs bound_args;
    auto* bound_cmd = app.add_subcommand("bound", "closed-form bound calculators");
    bound_cmd
        ->add_option("--theorem", bound_args.theorem,
                     "af|gaf|schwartz|sz|dmlz|gdmlz|klp|mult-schwartz|mult-gsz")
        ->required();
    bound_cmd->add_option("--grid", bound_args.grid_path, "grid JSON file");
    bound_cmd->add_option("--ring", bound_args.ring, "ring syntax, e.g. GF:3");
    bound_cmd->add_option("--dims", bound_args.dims, "variable count for --ring");
    bound_cmd->add_option("--poly", bound_args.poly, "polynomial (degree data source)");
    bound_cmd->add_option("--prefill", bound_args.prefill, "prefills for gaf");
    bound_cmd->add_option("--deg", bound_args.deg, "total degree");
    bound_cmd->add_option("--order", bound_args.order, "order d for klp");
    bound_cmd->add_option("--chain", bound_args.chain, "leading-coefficient chain d_1,...,d_n");
    bound_cmd->add_option("--dvec", bound_args.dvec, "per-variable degrees d_1,...,d_n");

    std::string reduce_grid, reduce_ring, reduce_poly;
    int reduce_dims = 0;
    auto* reduce_cmd = app.add_subcommand("reduce", "grid-reduce a polynomial");
    reduce_cmd->add_option("--grid", reduce_grid, "grid JSON file");
    reduce_cmd->add_option("--ring", reduce_ring, "ring syntax");
    reduce_cmd->add_option("--dims", reduce_dims, "variable count for --ring");
    reduce_cmd->add_option("--poly", reduce_poly, "polynomial")->required();

    std::string eval_grid, eval_ring, eval_poly, eval_point;
    int eval_dims = 0;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a polynomial at a point");
    eval_cmd->add_option("--grid", eval_grid, "grid JSON file");
    eval_cmd->add_option("--ring", eval_ring, "ring syntax");
    eval_cmd->add_option("--dims", eval_dims, "variable count for --ring");
    eval_cmd->add_option("--poly", eval_poly, "polynomial")->required();
    eval_cmd->add_option("--point", eval_point, "comma-separated element literals")->required();

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd
        ->add_option("--suite", verify_args.suite,
                     "af|gaf|schwartz|sz|dmlz|gdmlz|mult|dkss|petrov|all")
        ->required();
    verify_cmd->add_option("--ring", verify_args.ring, "ring syntax");
    verify_cmd->add_option("--dims", verify_args.dims, "variable count for --ring");
    verify_cmd->add_option("--grid", verify_args.grid_path, "grid JSON file");
    verify_cmd->add_option("--max-deg", verify_args.max_deg, "family total-degree cap");
    verify_cmd->add_option("--prefill", verify_args.prefill, "prefills (per-variable caps)");
    verify_cmd->add_option("--samples", verify_args.samples,
                           "draw count when the family is sampled");

    CodesArgs codes_args;
    auto* codes_cmd = app.add_subcommand("codes", "grid evaluation codes");
    codes_cmd->add_option("--kind", codes_args.kind, "grm|agc|gagc")->required();
    codes_cmd->add_option("--ring", codes_args.ring, "ring syntax");
    codes_cmd->add_option("--dims", codes_args.dims, "variable count");
    codes_cmd->add_option("--grid", codes_args.grid_path, "grid JSON file");
    codes_cmd->add_option("--order", codes_args.order, "order d")->required();
    codes_cmd->add_option("--prefill", codes_args.prefill, "prefills for gagc");
    auto* mindist_cmd = codes_cmd->add_subcommand("mindist", "minimum distance");
    mindist_cmd->add_option("--method", codes_args.method, "formula|brute|both")
        ->check(CLI::IsMember({"formula", "brute", "both"}));
    auto* genmat_cmd = codes_cmd->add_subcommand("genmat", "generator matrix CSV");
    genmat_cmd->add_option("--out", codes_args.matrix_out, "CSV output path");
    auto* dim_cmd = codes_cmd->add_subcommand("dim", "code dimension (basis size)");
    codes_cmd->require_subcommand(1);

    GeomArgs geom_args;
    auto* geom_cmd = app.add_subcommand("geom", "finite-geometry searches");
    geom_cmd->add_option("action", geom_args.action,
                         "holes|missing|blocking|tangent|cover-min")
        ->required();
    geom_cmd->add_option("--space", geom_args.space, "AG or PG")
        ->check(CLI::IsMember({"AG", "PG"}));
    geom_cmd->add_option("--n", geom_args.n, "dimension");
    geom_cmd->add_option("--q", geom_args.q, "field size (prime power)");
    geom_cmd->add_option("--cover", geom_args.cover_path, "cover JSON file");
    geom_cmd->add_option("--set", geom_args.set_path, "point-set JSON file");
    geom_cmd->add_option("--grid", geom_args.grid_path, "grid JSON for cover-min");
    geom_cmd->add_option("--max-size", geom_args.max_size, "subset search limit");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
    for (CLI::App* sub : codes_cmd->get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 1;
    }

    try {
        if (*bins_cmd) return run_bins(cfg, bins_args);
        if (*bound_cmd) return run_bound(cfg, bound_args);
        if (*reduce_cmd) return run_reduce(cfg, reduce_grid, reduce_ring, reduce_dims, reduce_poly);
        if (*eval_cmd) return run_eval(cfg, eval_grid, eval_ring, eval_dims, eval_poly, eval_point);
        if (*verify_cmd) return run_verify(cfg, verify_args);
        if (*codes_cmd) {
            if (*mindist_cmd) return run_codes_mindist(cfg, codes_args);
            if (*genmat_cmd) return run_codes_genmat(cfg, codes_args);
            if (*dim_cmd) return run_codes_dim(cfg, codes_args);
        }
        if (*geom_cmd) return run_geom(cfg, geom_args);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

// Exhaustive and seeded-random verification engine: enumerates polynomial
// families on small grids, checks every bound against observed zero counts,
// nonzero counts, or multiplicity sums, and records violations and
// minimal-slack witnesses.  Scans partition deterministically across
// threads; merged output equals single-threaded output.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gridpoly/bounds.hpp"
#include "gridpoly/common.hpp"
#include "gridpoly/format.hpp"
#include "gridpoly/poly.hpp"

namespace gridpoly::oracle {

enum class Theorem { AF, GAF, Schwartz, SZ, DMLZ, GDMLZ, MultSchwartz, MultGSZ, DKSS, Petrov };

inline const char* theorem_name(Theorem t) {
    switch (t) {
        case Theorem::AF: return "af";
        case Theorem::GAF: return "gaf";
        case Theorem::Schwartz: return "schwartz";
        case Theorem::SZ: return "sz";
        case Theorem::DMLZ: return "dmlz";
        case Theorem::GDMLZ: return "gdmlz";
        case Theorem::MultSchwartz: return "mult-schwartz";
        case Theorem::MultGSZ: return "mult-gsz";
        case Theorem::DKSS: return "dkss";
        case Theorem::Petrov: return "petrov";
    }
    return "?";
}

struct CoefficientSource {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t count = 10000;  // draws in random mode

    static CoefficientSource exhaustive_source() { return {true, 0, 0}; }
    static CoefficientSource random_source(std::uint64_t seed, std::uint64_t count) {
        return {false, seed, count};
    }
};

struct FamilySpec {
    GridSpec grid;
    long long max_total_degree = 0;
    std::optional<std::vector<long long>> per_var_caps;  // default: a_i - 1
    CoefficientSource coeffs;
};

struct Witness {
    std::uint64_t index = 0;  // enumeration or draw index
    std::string poly;
    long long degree = 0;   // total degree of the instance
    long long bound = 0;
    long long observed = 0;
    long long slack = 0;    // distance to the bound; 0 = tight, < 0 = violation
};

struct VerificationReport {
    std::string theorem;
    Ring ring;
    GridSpec grid;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violation_count = 0;
    std::vector<Witness> violations;  // first few, in enumeration order
    std::vector<Witness> tight;       // minimal slack per total degree
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t draws = 0;
    std::uint64_t elapsed_ms = 0;

    VerificationReport(std::string thm, Ring r, GridSpec g)
        : theorem(std::move(thm)), ring(std::move(r)), grid(std::move(g)) {}
};

struct VerifyOptions {
    int threads = 1;
    std::uint64_t cap = kDefaultEnumCap;
    std::size_t max_recorded_violations = 50;
};

struct DkssReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t violations = 0;
    long long min_slack = 0;  // min over pairs of bound - observed
    long long worst_observed = 0;
    long long worst_bound = 0;
};

// Verifies sum_{x in A_n} m(f,(x',x)) <= #A_n * m(f_dn, x') + d_n for
// every x' in the truncated grid.
inline DkssReport dkss_lemma_check(const SparsePoly& f, const GridSpec& grid,
                                   std::uint64_t cap = kDefaultEnumCap) {
    if (f.is_zero()) throw DomainError("zero polynomial");
    if (!grid.condition_d_all()) throw DomainError("grid must satisfy Condition (D)");
    if (grid.point_count() > cap) throw CapExceeded("grid enumeration exceeds cap");
    const int n = grid.nvars();
    if (f.nvars() != n) throw DomainError("variable count mismatch");
    const Ring& ring = grid.ring();
    const int dn = f.degree_in(n - 1).value_or(0);
    SparsePoly lead(ring, n - 1);
    for (const auto& [m, c] : f.terms()) {
        if (m[n - 1] != static_cast<std::uint32_t>(dn)) continue;
        Monomial head(m.begin(), m.end() - 1);
        lead.add_term(std::move(head), c);
    }
    const auto& last_set = grid.set(n - 1).elems;

    DkssReport out;
    out.min_slack = std::numeric_limits<long long>::max();
    auto handle_prefix = [&](const std::vector<Elem>& prefix) {
        const auto mlead = multiplicity(lead, prefix);
        long long lhs = 0;
        std::vector<Elem> full(prefix);
        full.push_back(0);
        for (Elem x : last_set) {
            full.back() = x;
            lhs += static_cast<long long>(*multiplicity(f, full));
        }
        const long long rhs =
            static_cast<long long>(last_set.size()) * static_cast<long long>(*mlead) + dn;
        ++out.pairs_checked;
        const long long slack = rhs - lhs;
        if (slack < out.min_slack) {
            out.min_slack = slack;
            out.worst_observed = lhs;
            out.worst_bound = rhs;
        }
        if (slack < 0) ++out.violations;
    };
    if (n == 1) {
        handle_prefix({});
    } else {
        std::vector<CoordinateSet> head_sets(grid.sets().begin(), grid.sets().end() - 1);
        GridSpec head(ring, std::move(head_sets));
        head.for_each_point(handle_prefix);
    }
    return out;
}

namespace detail {

struct FamilyContext {
    const GridSpec& grid;
    std::vector<long long> sizes;
    std::vector<long long> caps;      // effective per-variable caps
    std::vector<long long> prefills;  // a_i - caps_i
    std::vector<Monomial> basis;
    std::vector<std::vector<Elem>> rows;  // basis evaluations over the grid
    std::uint64_t npoints = 0;
    std::uint64_t card = 0;
    bool sets_all_equal = false;
};

inline FamilyContext build_context(const FamilySpec& family, std::uint64_t cap) {
    FamilyContext ctx{family.grid, {}, {}, {}, {}, {}, 0, 0, false};
    ctx.sizes = family.grid.sizes();
    const int n = family.grid.nvars();
    ctx.caps.resize(n);
    ctx.prefills.resize(n);
    for (int i = 0; i < n; ++i) {
        long long c = ctx.sizes[i] - 1;
        if (family.per_var_caps) {
            if (static_cast<int>(family.per_var_caps->size()) != n)
                throw DomainError("per-variable cap count mismatch");
            c = std::min(c, (*family.per_var_caps)[i]);
            if (c < 0) throw DomainError("per-variable caps must be non-negative");
        }
        ctx.caps[i] = c;
        ctx.prefills[i] = ctx.sizes[i] - c;
    }
    if (family.max_total_degree < 0) throw DomainError("max total degree must be non-negative");

    Monomial cur(n, 0);
    auto rec = [&](auto&& self, int var, long long left) -> void {
        if (var == n) {
            ctx.basis.push_back(cur);
            return;
        }
        const long long top = std::min(ctx.caps[var], left);
        for (long long e = 0; e <= top; ++e) {
            cur[var] = static_cast<std::uint32_t>(e);
            self(self, var + 1, left - e);
        }
        cur[var] = 0;
    };
    rec(rec, 0, family.max_total_degree);
    std::sort(ctx.basis.begin(), ctx.basis.end(), TermOrder{});

    ctx.npoints = family.grid.point_count();
    if (ctx.npoints > cap) throw CapExceeded("grid enumeration exceeds cap");
    ctx.card = family.grid.ring().cardinality();
    const Ring& ring = family.grid.ring();
    ctx.rows.reserve(ctx.basis.size());
    for (const auto& m : ctx.basis) {
        std::vector<Elem> row;
        row.reserve(ctx.npoints);
        family.grid.for_each_point([&](const std::vector<Elem>& pt) {
            Elem v = ring.one();
            for (int i = 0; i < n; ++i)
                if (m[i]) v = ring.mul(v, ring.pow(pt[i], m[i]));
            row.push_back(v);
        });
        ctx.rows.push_back(std::move(row));
    }

    ctx.sets_all_equal = true;
    auto first_sorted = family.grid.set(0).elems;
    std::sort(first_sorted.begin(), first_sorted.end());
    for (int i = 1; i < n; ++i) {
        auto s = family.grid.set(i).elems;
        std::sort(s.begin(), s.end());
        if (s != first_sorted) ctx.sets_all_equal = false;
    }
    return ctx;
}

// Coefficient digits for one instance; pure function of (source, index).
inline void instance_digits(const CoefficientSource& src, std::uint64_t index, std::uint64_t card,
                            std::vector<Elem>& digits) {
    if (src.exhaustive) {
        std::uint64_t v = index;
        for (auto& d : digits) {
            d = static_cast<Elem>(v % card);
            v /= card;
        }
    } else {
        std::uint64_t state = splitmix64(src.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        for (auto& d : digits) {
            state = splitmix64(state);
            d = static_cast<Elem>(state % card);
        }
    }
}

struct InstanceData {
    std::vector<Elem> digits;
    long long total_degree = -1;       // -1 marks the zero polynomial
    std::vector<long long> var_degrees;
    std::uint64_t zeros = 0;
    std::uint64_t nonzeros = 0;
};

inline void analyze_instance(const FamilyContext& ctx, InstanceData& inst, bool need_census) {
    const int n = ctx.grid.nvars();
    inst.total_degree = -1;
    inst.var_degrees.assign(n, 0);
    for (std::size_t j = 0; j < ctx.basis.size(); ++j) {
        if (inst.digits[j] == 0) continue;
        const auto& m = ctx.basis[j];
        inst.total_degree =
            std::max(inst.total_degree, static_cast<long long>(monomial_degree(m)));
        for (int i = 0; i < n; ++i)
            inst.var_degrees[i] = std::max(inst.var_degrees[i], static_cast<long long>(m[i]));
    }
    if (inst.total_degree < 0 || !need_census) return;
    const Ring& ring = ctx.grid.ring();
    inst.zeros = inst.nonzeros = 0;
    for (std::uint64_t p = 0; p < ctx.npoints; ++p) {
        Elem v = 0;
        for (std::size_t j = 0; j < ctx.basis.size(); ++j)
            if (inst.digits[j] != 0) v = ring.add(v, ring.mul(inst.digits[j], ctx.rows[j][p]));
        if (v == 0)
            ++inst.zeros;
        else
            ++inst.nonzeros;
    }
}

inline SparsePoly instance_poly(const FamilyContext& ctx, const InstanceData& inst) {
    SparsePoly f(ctx.grid.ring(), ctx.grid.nvars());
    for (std::size_t j = 0; j < ctx.basis.size(); ++j)
        if (inst.digits[j] != 0) f.add_term(ctx.basis[j], inst.digits[j]);
    return f;
}

struct WorkerState {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violation_count = 0;
    std::vector<Witness> violations;
    std::map<long long, Witness> tight;  // per total degree

    // caches keyed by degree data
    std::map<long long, long long> bound_by_degree;
    std::map<std::vector<long long>, long long> bound_by_vector;
};

}  // namespace detail

inline VerificationReport verify(Theorem theorem, const FamilySpec& family,
                                 const VerifyOptions& options = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::FamilyContext ctx = detail::build_context(family, options.cap);
    const Ring& ring = family.grid.ring();
    const int n = family.grid.nvars();

    VerificationReport report(theorem_name(theorem), ring, family.grid);
    report.exhaustive = family.coeffs.exhaustive;
    report.seed = family.coeffs.exhaustive ? 0 : family.coeffs.seed;

    std::uint64_t total;
    if (family.coeffs.exhaustive) {
        Big space = 1;
        for (std::size_t j = 0; j < ctx.basis.size(); ++j) {
            space *= ctx.card;
            if (space > options.cap) throw CapExceeded("family enumeration exceeds cap");
        }
        total = space.convert_to<std::uint64_t>();
    } else {
        total = family.coeffs.count;
    }
    report.draws = family.coeffs.exhaustive ? 0 : total;

    // Grid-level hypotheses: every theorem here needs Condition (D);
    // the plain DMLZ additionally needs A = S^n.
    const bool grid_ok =
        family.grid.condition_d_all() && (theorem != Theorem::DMLZ || ctx.sets_all_equal);
    if (!grid_ok) {
        report.skipped = total;
        report.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  t0)
                .count());
        return report;
    }

    const bool need_census = theorem != Theorem::MultSchwartz && theorem != Theorem::MultGSZ &&
                             theorem != Theorem::DKSS;
    std::vector<long long> sizes_sorted = ctx.sizes;
    std::sort(sizes_sorted.rbegin(), sizes_sorted.rend());

    auto process_range = [&](std::uint64_t begin, std::uint64_t end, detail::WorkerState& st) {
        detail::InstanceData inst;
        inst.digits.resize(ctx.basis.size());
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            detail::instance_digits(family.coeffs, idx, ctx.card, inst.digits);
            detail::analyze_instance(ctx, inst, need_census);
            if (inst.total_degree < 0) {  // zero polynomial
                ++st.skipped;
                continue;
            }
            long long bound = 0, observed = 0, slack = 0;
            bool admissible = true;
            switch (theorem) {
                case Theorem::AF:
                case Theorem::GAF: {
                    auto [it, fresh] = st.bound_by_degree.try_emplace(inst.total_degree, 0);
                    if (fresh) {
                        const auto r =
                            theorem == Theorem::AF
                                ? bounds::alon_furedi_nonzeros(ctx.sizes, inst.total_degree)
                                : bounds::generalized_af_nonzeros(ctx.sizes, ctx.prefills,
                                                                  inst.total_degree);
                        it->second = r.applicable ? r.value : -1;
                    }
                    if (it->second < 0) {
                        admissible = false;
                        break;
                    }
                    bound = it->second;
                    observed = static_cast<long long>(inst.nonzeros);
                    slack = observed - bound;
                    break;
                }
                case Theorem::Schwartz: {
                    const auto chain =
                        leading_coeff_chain(detail::instance_poly(ctx, inst)).degrees;
                    std::vector<long long> key(chain.begin(), chain.end());
                    auto [it, fresh] = st.bound_by_vector.try_emplace(key, 0);
                    if (fresh) it->second = bounds::schwartz_zeros(ctx.sizes, key).value;
                    bound = it->second;
                    observed = static_cast<long long>(inst.zeros);
                    slack = bound - observed;
                    break;
                }
                case Theorem::SZ: {
                    auto [it, fresh] = st.bound_by_degree.try_emplace(inst.total_degree, 0);
                    if (fresh)
                        it->second = bounds::sz_zeros(sizes_sorted, inst.total_degree).value;
                    bound = it->second;
                    observed = static_cast<long long>(inst.zeros);
                    slack = bound - observed;
                    break;
                }
                case Theorem::DMLZ: {
                    const long long d =
                        *std::max_element(inst.var_degrees.begin(), inst.var_degrees.end());
                    const auto r = bounds::dmlz_zeros(ctx.sizes[0], n, d);
                    if (!r.applicable) {
                        admissible = false;
                        break;
                    }
                    bound = r.value;
                    observed = static_cast<long long>(inst.zeros);
                    slack = bound - observed;
                    break;
                }
                case Theorem::GDMLZ: {
                    auto [it, fresh] = st.bound_by_vector.try_emplace(inst.var_degrees, 0);
                    if (fresh) {
                        const auto r =
                            bounds::generalized_dmlz_nonzeros(ctx.sizes, inst.var_degrees);
                        it->second = r.applicable ? r.value : -1;
                    }
                    if (it->second < 0) {
                        admissible = false;
                        break;
                    }
                    bound = it->second;
                    observed = static_cast<long long>(inst.nonzeros);
                    slack = observed - bound;
                    break;
                }
                case Theorem::MultSchwartz: {
                    const SparsePoly f = detail::instance_poly(ctx, inst);
                    const auto chain = leading_coeff_chain(f).degrees;
                    std::vector<long long> key(chain.begin(), chain.end());
                    auto [it, fresh] = st.bound_by_vector.try_emplace(key, 0);
                    if (fresh) it->second = bounds::mult_schwartz_bound(ctx.sizes, key).value;
                    bound = it->second;
                    observed =
                        static_cast<long long>(multiplicity_sum(f, family.grid, options.cap));
                    slack = bound - observed;
                    break;
                }
                case Theorem::MultGSZ: {
                    const SparsePoly f = detail::instance_poly(ctx, inst);
                    auto [it, fresh] = st.bound_by_degree.try_emplace(inst.total_degree, 0);
                    if (fresh)
                        it->second = bounds::mult_gsz_bound(sizes_sorted, inst.total_degree).value;
                    bound = it->second;
                    observed =
                        static_cast<long long>(multiplicity_sum(f, family.grid, options.cap));
                    slack = bound - observed;
                    break;
                }
                case Theorem::DKSS: {
                    const SparsePoly f = detail::instance_poly(ctx, inst);
                    const auto d = dkss_lemma_check(f, family.grid, options.cap);
                    bound = d.worst_bound;
                    observed = d.worst_observed;
                    slack = d.min_slack;
                    break;
                }
                case Theorem::Petrov: {
                    auto [it, fresh] = st.bound_by_vector.try_emplace(
                        [&] {
                            std::vector<long long> key = inst.var_degrees;
                            key.push_back(inst.total_degree);
                            return key;
                        }(),
                        0);
                    if (fresh) {
                        const SparsePoly g =
                            extremal_polylinear(family.grid, inst.var_degrees, inst.total_degree);
                        it->second = static_cast<long long>(
                            zero_census(g, family.grid, options.cap).zeros);
                    }
                    bound = it->second;  // zeros of the polylinear comparator
                    observed = static_cast<long long>(inst.zeros);
                    slack = bound - observed;
                    break;
                }
            }
            if (!admissible) {
                ++st.skipped;
                continue;
            }
            ++st.checked;
            if (slack < 0) {
                ++st.violation_count;
                if (st.violations.size() < 50) {
                    st.violations.push_back({idx, format_poly(detail::instance_poly(ctx, inst)),
                                             inst.total_degree, bound, observed, slack});
                }
            }
            auto it = st.tight.find(inst.total_degree);
            if (it == st.tight.end() || slack < it->second.slack) {
                Witness w{idx, format_poly(detail::instance_poly(ctx, inst)), inst.total_degree,
                          bound, observed, slack};
                st.tight.insert_or_assign(inst.total_degree, std::move(w));
            }
        }
    };

    const int nthreads = std::max(1, std::min<int>(options.threads, 64));
    std::vector<detail::WorkerState> states(nthreads);
    if (nthreads == 1 || total < 1024) {
        process_range(0, total, states[0]);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::uint64_t begin = chunk * t;
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back(
                [&, begin, end, t] { process_range(begin, end, states[static_cast<std::size_t>(t)]); });
        }
        for (auto& w : workers) w.join();
    }

    std::map<long long, Witness> tight_merged;
    for (const auto& st : states) {
        report.checked += st.checked;
        report.skipped += st.skipped;
        report.violation_count += st.violation_count;
        for (const auto& v : st.violations)
            if (report.violations.size() < options.max_recorded_violations)
                report.violations.push_back(v);
        for (const auto& [deg, w] : st.tight) {
            auto it = tight_merged.find(deg);
            if (it == tight_merged.end() || w.slack < it->second.slack ||
                (w.slack == it->second.slack && w.index < it->second.index))
                tight_merged.insert_or_assign(deg, w);
        }
    }
    for (auto& [deg, w] : tight_merged) report.tight.push_back(w);
    report.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    return report;
}

// Confirms the sharpness construction meets the bound exactly for every
// admissible degree (or per-variable degree vector).
struct SharpnessEntry {
    std::string parameter;  // "d=3" or "dvec=1,2"
    long long bound = 0;
    long long observed = 0;
    std::string poly;
};

struct SharpnessReport {
    std::string theorem;
    std::vector<SharpnessEntry> entries;
    bool all_tight = true;
};

inline SharpnessReport sharpness_scan(Theorem theorem, const GridSpec& grid,
                                      const std::vector<long long>& prefills,
                                      std::uint64_t cap = kDefaultEnumCap) {
    if (!grid.condition_d_all()) throw DomainError("grid must satisfy Condition (D)");
    const auto sizes = grid.sizes();
    const int n = grid.nvars();
    if (static_cast<int>(prefills.size()) != n) throw DomainError("prefill count mismatch");
    SharpnessReport out;
    out.theorem = theorem_name(theorem);
    if (theorem == Theorem::AF || theorem == Theorem::GAF) {
        std::vector<long long> caps(n);
        long long slack = 0;
        for (int i = 0; i < n; ++i) {
            caps[i] = sizes[i] - prefills[i];
            slack += caps[i];
        }
        for (long long d = 0; d <= slack; ++d) {
            const SparsePoly f = extremal_polylinear(grid, caps, d);
            const auto censo = zero_census(f, grid, cap);
            const auto bound = bounds::generalized_af_nonzeros(sizes, prefills, d);
            SharpnessEntry e;
            e.parameter = "d=" + std::to_string(d);
            e.bound = bound.value;
            e.observed = static_cast<long long>(censo.nonzeros);
            e.poly = format_poly(f);
            out.all_tight = out.all_tight && e.bound == e.observed;
            out.entries.push_back(std::move(e));
        }
        return out;
    }
    if (theorem == Theorem::GDMLZ) {
        std::vector<long long> dvec(n, 1);
        for (;;) {
            SparsePoly f = SparsePoly::constant(grid.ring(), n, grid.ring().one());
            for (int i = 0; i < n; ++i)
                for (long long r = 0; r < dvec[i]; ++r)
                    f = f * SparsePoly::linear_factor(grid.ring(), n, i,
                                                      grid.set(i).elems[static_cast<std::size_t>(r)]);
            const auto censo = zero_census(f, grid, cap);
            const auto bound = bounds::generalized_dmlz_nonzeros(sizes, dvec);
            SharpnessEntry e;
            std::string param = "dvec=";
            for (int i = 0; i < n; ++i) param += (i ? "," : "") + std::to_string(dvec[i]);
            e.parameter = std::move(param);
            e.bound = bound.value;
            e.observed = static_cast<long long>(censo.nonzeros);
            e.poly = format_poly(f);
            out.all_tight = out.all_tight && e.bound == e.observed;
            out.entries.push_back(std::move(e));
            int i = n - 1;
            while (i >= 0 && dvec[i] == sizes[i] - 1) dvec[i--] = 1;
            if (i < 0) break;
            ++dvec[i];
        }
        return out;
    }
    throw DomainError("sharpness scan supports af, gaf and gdmlz");
}

enum class Objective { MinNonzeros, MaxMultiplicitySum };

// Scans all nonzero reduced polynomials of total degree exactly d (or at
// most d) and returns the first argextreme in enumeration order.
inline std::pair<SparsePoly, long long> find_extremal(const GridSpec& grid, long long d,
                                                      Objective objective,
                                                      bool exact_degree = true,
                                                      std::uint64_t cap = kDefaultEnumCap) {
    FamilySpec family{grid, d, std::nullopt, CoefficientSource::exhaustive_source()};
    detail::FamilyContext ctx = detail::build_context(family, cap);
    Big space = 1;
    for (std::size_t j = 0; j < ctx.basis.size(); ++j) {
        space *= ctx.card;
        if (space > cap) throw CapExceeded("family enumeration exceeds cap");
    }
    const std::uint64_t total = space.convert_to<std::uint64_t>();
    const bool need_census = objective == Objective::MinNonzeros;

    std::optional<long long> best;
    SparsePoly best_poly = SparsePoly::zero(grid.ring(), grid.nvars());
    detail::InstanceData inst;
    inst.digits.resize(ctx.basis.size());
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        detail::instance_digits(family.coeffs, idx, ctx.card, inst.digits);
        detail::analyze_instance(ctx, inst, need_census);
        if (inst.total_degree < 0) continue;
        if (exact_degree ? inst.total_degree != d : inst.total_degree > d) continue;
        long long value;
        if (objective == Objective::MinNonzeros) {
            value = static_cast<long long>(inst.nonzeros);
            if (!best || value < *best) {
                best = value;
                best_poly = detail::instance_poly(ctx, inst);
            }
        } else {
            const SparsePoly f = detail::instance_poly(ctx, inst);
            value = static_cast<long long>(multiplicity_sum(f, grid, cap));
            if (!best || value > *best) {
                best = value;
                best_poly = f;
            }
        }
    }
    if (!best) throw DomainError("no polynomial of the requested degree exists");
    return {best_poly, *best};
}

struct PetrovRecord {
    SparsePoly comparator;  // the simple polylinear g
    std::uint64_t zeros_f = 0;
    std::uint64_t zeros_g = 0;
};

// Builds the polylinear comparator for the degree data of f and checks
// #Z_A(f) <= #Z_A(g).
inline PetrovRecord petrov_compare(const SparsePoly& f, const GridSpec& grid,
                                   std::uint64_t cap = kDefaultEnumCap) {
    if (f.is_zero()) throw DomainError("zero polynomial");
    if (!grid.condition_d_all()) throw DomainError("grid must satisfy Condition (D)");
    const auto sizes = grid.sizes();
    std::vector<long long> dvec(grid.nvars());
    for (int i = 0; i < grid.nvars(); ++i) {
        dvec[i] = f.degree_in(i).value_or(0);
        if (dvec[i] >= sizes[i]) throw DomainError("polynomial must be grid-reduced");
    }
    const long long d = *f.total_degree();
    PetrovRecord rec{extremal_polylinear(grid, dvec, d), 0, 0};
    rec.zeros_f = zero_census(f, grid, cap).zeros;
    rec.zeros_g = zero_census(rec.comparator, grid, cap).zeros;
    if (rec.zeros_f > rec.zeros_g)
        throw BoundViolation("polylinear comparator has fewer zeros than the input");
    return rec;
}

inline nlohmann::ordered_json witness_to_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["index"] = w.index;
    j["poly"] = w.poly;
    j["degree"] = w.degree;
    j["bound"] = w.bound;
    j["observed"] = w.observed;
    j["slack"] = w.slack;
    return j;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["ring"] = format_ring(r.ring);
    j["grid"] = grid_to_json(r.grid)["sets"];
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    j["violation_count"] = r.violation_count;
    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) viols.push_back(witness_to_json(v));
    j["violations"] = std::move(viols);
    auto tight = nlohmann::ordered_json::array();
    for (const auto& w : r.tight) tight.push_back(witness_to_json(w));
    j["tight"] = std::move(tight);
    j["mode"] = r.exhaustive ? "exhaustive" : "random";
    j["draws"] = r.draws;
    j["seed"] = r.seed;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

}  // namespace gridpoly::oracle

/// Orchestration: pick the pipeline, run it, post-process the symmetry set
/// into a deterministic report.
#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>

#include "surfsym/parser.hpp"
#include "surfsym/report.hpp"
#include "surfsym/ruled.hpp"

namespace surfsym {

struct RunOptions {
    PipelineMode mode = PipelineMode::automatic;
    PnMode pn = PnMode::automatic;
    std::optional<int> degree_bound;
    std::optional<int> sample_budget;
    std::uint64_t seed = 1;
    bool verbose = false;
};

/// File hints fill any option the caller left unset.
inline RunOptions merge_hints(RunOptions opts, const SurfaceFile& file, bool cli_mode_set,
                              bool cli_pn_set, bool cli_seed_set) {
    if (!cli_mode_set && file.mode) opts.mode = *file.mode;
    if (!cli_pn_set && file.pn) opts.pn = *file.pn;
    if (!opts.degree_bound && file.degree_bound) opts.degree_bound = file.degree_bound;
    if (!opts.sample_budget && file.sample_budget) opts.sample_budget = file.sample_budget;
    if (!cli_seed_set && file.seed) opts.seed = *file.seed;
    return opts;
}

namespace detail {

inline void log_verbose(const RunOptions& opts, const std::string& line) {
    if (opts.verbose) std::fprintf(stderr, "[surfsym] %s\n", line.c_str());
}

/// Candidate reparametrizations -> verified symmetry records.
inline std::vector<SymmetryRecord> general_records(const SurfaceParam& x,
                                                   const std::vector<XiSystem>& systems,
                                                   const RunOptions& opts, int degree_bound,
                                                   int budget, std::vector<std::string>& warnings) {
    std::vector<SymmetryRecord> records;
    bool any_live = false;
    for (const auto& sys : systems) {
        if (etas_both_zero(sys, opts.seed)) continue;
        any_live = true;
        log_verbose(opts, std::string("system ") + xi_source_name(sys.source) +
                              ": deg xi1 = " + std::to_string(sys.xi1.total_degree()) +
                              ", deg xi2 = " + std::to_string(sys.xi2.total_degree()));
        SystemExtraction ext = system_candidates(sys, degree_bound, budget, opts.seed);
        if (ext.warning)
            warnings.push_back("extraction gap: some specialization roots did not lift at the "
                               "current degree bound; the group order is a lower bound");
        log_verbose(opts, std::string("system ") + xi_source_name(sys.source) + ": " +
                              std::to_string(ext.candidates.size()) + " verified candidates");
        for (const auto& cand : ext.candidates) {
            auto f = solve_isometry(x, cand);
            if (!f) continue;
            // The +-H systems usually pair with det(A) = +-1, but the sign
            // convention of the rational root of EG - F^2 can twist the
            // pairing, so a mismatch is informational, not disqualifying.
            if (opts.verbose &&
                ((sys.source == XiSource::pn_plus && f->det_sign != 1) ||
                 (sys.source == XiSource::pn_minus && f->det_sign != -1)))
                log_verbose(opts, "pn sign pairing twisted for a verified candidate");
            SymmetryRecord rec;
            rec.isometry = *f;
            rec.reparam = cand;
            rec.provenance = Provenance::general_pipeline;
            rec.source = sys.source;
            records.push_back(std::move(rec));
        }
    }
    if (!any_live) fail(errc::zero_resultants, "method fails: zero resultants");
    return records;
}

inline void finalize(SymmetryReport& rep, std::vector<SymmetryRecord> records,
                     const std::chrono::steady_clock::time_point& t0) {
    // records are (isometry, reparametrization) pairs; a non-proper chart can
    // pair one isometry with several reparametrizations
    std::set<std::string> seen;
    std::vector<SymmetryRecord> unique;
    for (auto& r : records) {
        std::string key =
            r.isometry.key() + "|" + r.reparam.psi1.str() + "|" + r.reparam.psi2.str();
        if (seen.insert(std::move(key)).second) unique.push_back(std::move(r));
    }
    bool has_id = false;
    for (const auto& r : unique) has_id = has_id || r.isometry.is_identity();
    if (!has_id) {
        SymmetryRecord id;
        id.isometry = Isometry::identity();
        id.reparam = {RationalFunction::variable(Var::t), RationalFunction::variable(Var::s),
                      true};
        unique.push_back(std::move(id));
        rep.warnings.push_back(
            "identity was not produced by extraction; added explicitly (group may be larger)");
    }
    std::sort(unique.begin(), unique.end(), [](const SymmetryRecord& a, const SymmetryRecord& b) {
        return a.isometry.key() < b.isometry.key();
    });
    ClosureReport closure = group_closure_check(unique);
    rep.records = std::move(unique);
    rep.group_order = closure.order;
    rep.closed = closure.closed;
    rep.contains_identity = closure.contains_identity;
    if (rep.records.size() != rep.group_order)
        rep.warnings.push_back(
            std::to_string(rep.records.size()) + " reparametrizations over " +
            std::to_string(rep.group_order) +
            " distinct isometries (a non-proper chart lifts symmetries more than once)");
    if (!closure.closed)
        rep.warnings.push_back("symmetry set is not closed under composition/inverse; "
                               "the reported order is a lower bound");
    rep.duration_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
}

}  // namespace detail

/// Run the symmetry computation on a parsed surface description.
inline SymmetryReport run(const SurfaceFile& file, RunOptions opts) {
    auto t0 = std::chrono::steady_clock::now();
    SymmetryReport rep;
    rep.surface_name = file.name;
    rep.seed = opts.seed;
    rep.mode = opts.mode == PipelineMode::automatic
                   ? "auto"
                   : (opts.mode == PipelineMode::general ? "general" : "ruled");

    bool proper_warning = false;
    SurfaceParam x = SurfaceParam::create(file.components, true, &proper_warning);
    if (proper_warning)
        rep.warnings.push_back("properness heuristic found extra rational preimages; "
                               "the parametrization may be non-proper");

    int degree_bound = opts.degree_bound.value_or(x.degree_max() + 2);
    int budget = opts.sample_budget.value_or(4 * (degree_bound + 1) * (degree_bound + 1));
    rep.degree_bound = degree_bound;

    // ruled route (forced or auto)
    if (opts.mode != PipelineMode::general) {
        auto r = detect_standard_form(x);
        if (!r && opts.mode == PipelineMode::ruled)
            fail(errc::not_standard_form, "not in standard form");
        if (r) {
            RuledResult rr = ruled_symmetries(*r, degree_bound, opts.seed);
            if (!rr.fallback) {
                rep.pipeline = "ruled";
                if (rr.warning)
                    rep.warnings.push_back("extraction gap in the striction-line symmetries; "
                                           "the group order is a lower bound");
                for (const auto& cs : rr.curve_only)
                    rep.warnings.push_back("curve-only symmetry (striction line maps, rulings do "
                                           "not): det " +
                                           std::string(cs.isometry.det_sign > 0 ? "+1" : "-1"));
                detail::finalize(rep, rr.symmetries, t0);
                return rep;
            }
            switch (*rr.fallback) {
                case RuledFallback::planar:
                case RuledFallback::cylindrical:
                case RuledFallback::conical: {
                    // classification is in scope; the full group is not
                    rep.pipeline = "ruled";
                    rep.warnings.push_back(
                        std::string("unsupported: surface is ") +
                        developable_name(rr.classification.tag) +
                        "; its symmetry group is infinite or delegated, reporting the "
                        "identity only");
                    detail::finalize(rep, {}, t0);
                    return rep;
                }
                case RuledFallback::striction_degenerate:
                    rep.warnings.push_back("ruled route: the striction line is a line or a "
                                           "circle; falling back to the general algorithm");
                    break;
            }
        }
    }

    // general route
    bool use_pn = false;
    if (opts.pn == PnMode::on) {
        if (!pn_check(x))
            fail(errc::degenerate_parametrization,
                 "pn forced but EG - F^2 is not the square of a rational function");
        use_pn = true;
    } else if (opts.pn == PnMode::automatic) {
        use_pn = pn_check(x).has_value();
    }
    rep.pipeline = use_pn ? "general_pn" : "general";
    auto systems = build_xi(x, use_pn);
    auto records = detail::general_records(x, systems, opts, degree_bound, budget, rep.warnings);
    detail::finalize(rep, std::move(records), t0);
    return rep;
}

inline SymmetryReport run(const std::string& text, RunOptions opts = {}) {
    return run(parse_surface(text), opts);
}

}  // namespace surfsym

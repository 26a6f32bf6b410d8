/// The invariant-matching core: build the curvature matching system xi1/xi2,
/// eliminate with resultants, extract the branches linear in the new
/// parameters, and recover full reparametrization candidates.
///
/// Branch extraction follows the sampling design: rational roots of the
/// specialized resultant seed exact Newton power-series continuation at the
/// sample, a Pade step proposes the rational-function branch, and exact
/// division of the resultant confirms it.  Everything downstream of the root
/// finding is exact, so no spurious branch survives.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "surfsym/diffgeo.hpp"
#include "surfsym/reconstruct.hpp"
#include "surfsym/resultant.hpp"

namespace surfsym {

enum class XiSource { general, pn_plus, pn_minus };

inline const char* xi_source_name(XiSource s) {
    switch (s) {
        case XiSource::general: return "general";
        case XiSource::pn_plus: return "pn_plus";
        case XiSource::pn_minus: return "pn_minus";
    }
    return "?";
}

struct XiSystem {
    MultiPoly xi1, xi2;  // polynomials in t, s, u, v
    XiSource source = XiSource::general;
    std::vector<std::string> notes;
};

struct CremonaCandidate {
    RationalFunction psi1, psi2;
    bool verified = false;

    bool less_than(const CremonaCandidate& o) const {
        if (psi1 != o.psi1) return psi1.less_than(o.psi1);
        return psi2.less_than(o.psi2);
    }
    bool operator==(const CremonaCandidate& o) const {
        return psi1 == o.psi1 && psi2 == o.psi2;
    }
};

namespace detail {

/// Numerator of F(t,s) - F(u,v) (or + for `sum`), cross-multiplied.
inline MultiPoly cross_match(const RationalFunction& f, bool sum) {
    MultiPoly n2 = f.num().rename_ts_to_uv();
    MultiPoly d2 = f.den().rename_ts_to_uv();
    return sum ? f.num() * d2 + n2 * f.den() : f.num() * d2 - n2 * f.den();
}

/// Strip factors independent of (u,v) [and of (t,s)], then make squarefree
/// in every variable.
inline MultiPoly reduce_xi(MultiPoly xi, std::vector<std::string>* notes) {
    if (xi.is_zero()) return xi;
    xi = xi.primitive_part();
    auto strip_content = [&](Var a, Var b, const char* label) {
        // content of xi viewed as a polynomial in (a, b): group terms by
        // their (a,b)-exponent pair, gcd the coefficient polynomials
        std::unordered_map<std::uint64_t, std::vector<Term>> bucket;
        for (const auto& t : xi.terms()) {
            std::uint64_t key = (static_cast<std::uint64_t>(t.m.exp(a)) << 16) | t.m.exp(b);
            std::array<unsigned, kNumVars> e{};
            for (int i = 0; i < kNumVars; ++i) e[i] = t.m.exp(i);
            e[var_index(a)] = 0;
            e[var_index(b)] = 0;
            bucket[key].push_back({Monomial::from_exponents(e), t.c});
        }
        MultiPoly cont = MultiPoly::zero();
        for (auto& [key, terms] : bucket) {
            cont = gcd_poly(cont, MultiPoly::from_terms(std::move(terms)));
            if (cont.is_constant() && !cont.is_zero()) return;
        }
        if (!cont.is_constant()) {
            // divide the full polynomial by the content
            auto q = xi.divide_exact(cont);
            if (q) {
                xi = *q;
                if (notes) notes->push_back(std::string("removed factor independent of ") + label +
                                            ": " + cont.str());
            }
        }
    };
    strip_content(Var::u, Var::v, "(u,v)");
    strip_content(Var::t, Var::s, "(t,s)");
    xi = squarefree_all(xi);
    return xi;
}

inline RationalFunction pn_mean_curvature(const FundamentalForms& f, const RationalFunction& w) {
    RationalFunction num = f.E * f.N2 + f.G * f.L2 - RationalFunction::constant(2) * f.F * f.M2;
    return num / (RationalFunction::constant(2) * w * f.Wsq);
}

}  // namespace detail

/// The matching systems for a surface.  The general route pairs the Gauss
/// curvature with the squared mean curvature; the PN route replaces the
/// square by the rational mean curvature itself, one system per sign.
inline std::vector<XiSystem> build_xi(const SurfaceParam& x, bool use_pn) {
    FundamentalForms forms = fundamental_forms(x);
    RationalFunction K = gauss_curvature(forms);

    std::optional<RationalFunction> w;
    if (use_pn) w = pn_check(forms);

    RationalFunction mean_invariant =
        w ? detail::pn_mean_curvature(forms, *w) : mean_curvature_squared(forms);

    if (K.is_constant() && mean_invariant.is_constant()) {
        std::string hint;
        if (!K.is_zero())
            hint = "sphere";
        else if (mean_invariant.is_zero())
            hint = "developable";
        else
            hint = "linear-Weingarten";
        fail(errc::invariant_degeneracy, "invariant degeneracy (" + hint + ")");
    }

    std::vector<XiSystem> out;
    if (!w) {
        XiSystem sys;
        sys.source = XiSource::general;
        sys.xi1 = detail::reduce_xi(detail::cross_match(K, false), &sys.notes);
        sys.xi2 = detail::reduce_xi(detail::cross_match(mean_invariant, false), &sys.notes);
        out.push_back(std::move(sys));
    } else {
        XiSystem plus;
        plus.source = XiSource::pn_plus;
        plus.xi1 = detail::reduce_xi(detail::cross_match(K, false), &plus.notes);
        plus.xi2 = detail::reduce_xi(detail::cross_match(mean_invariant, false), &plus.notes);
        XiSystem minus;
        minus.source = XiSource::pn_minus;
        minus.xi1 = plus.xi1;
        minus.xi2 = detail::reduce_xi(detail::cross_match(mean_invariant, true), &minus.notes);
        out.push_back(std::move(plus));
        out.push_back(std::move(minus));
    }
    return out;
}

/// eta1 = Res_v(xi1, xi2) and eta2 = Res_u(xi1, xi2), content-stripped and
/// squarefree in the branch variable.  Fails when both vanish identically.
inline std::pair<MultiPoly, MultiPoly> eta_resultants(const XiSystem& sys, std::uint64_t seed = 1) {
    auto one_resultant = [&](Var eliminate, Var branch) {
        if (sys.xi1.is_zero() || sys.xi2.is_zero()) return MultiPoly::zero();
        RandomStream rng(seed ^ (0xabcdefULL + static_cast<std::uint64_t>(eliminate)));
        MultiPoly eta = resultant_tuned(sys.xi1, sys.xi2, eliminate, rng);
        if (eta.is_zero() || eta.is_constant()) return eta;
        eta = eta.primitive_part();
        // strip the content free of the branch variable
        if (eta.uses(branch)) {
            MultiPoly cont = content_in(eta, branch);
            if (!cont.is_constant()) eta = *eta.divide_exact(cont);
            eta = squarefree_part(eta, branch);
        }
        return eta;
    };
    MultiPoly eta1 = one_resultant(Var::v, Var::u);
    MultiPoly eta2 = one_resultant(Var::u, Var::v);
    if (eta1.is_zero() && eta2.is_zero())
        fail(errc::zero_resultants, "method fails: zero resultants");
    return {eta1, eta2};
}

namespace detail {

/// p(t0 + t, s0 + s, ...), truncated past total (t,s)-degree prec-1; the
/// exponents of u, v, w are carried through unchanged.
inline MultiPoly shift_truncated(const MultiPoly& p, const Rational& t0, const Rational& s0,
                                 int prec) {
    std::unordered_map<std::uint64_t, Rational> acc;
    std::vector<Rational> tp{Rational(1)}, sp{Rational(1)};
    for (const auto& term : p.terms()) {
        unsigned a = term.m.exp(Var::t), b = term.m.exp(Var::s);
        Monomial rest = term.m / (Monomial::var(Var::t, a) * Monomial::var(Var::s, b));
        while (tp.size() <= a) tp.push_back(tp.back() * t0);
        while (sp.size() <= b) sp.push_back(sp.back() * s0);
        // binomial expansion of (t + t0)^a (s + s0)^b, truncated
        Rational ca(1);
        for (unsigned i = 0; i <= a && static_cast<int>(i) < prec; ++i) {
            if (i > 0) ca = ca * static_cast<long>(a - i + 1) / static_cast<long>(i);
            Rational cb(1);
            for (unsigned j = 0; j <= b && static_cast<int>(i + j) < prec; ++j) {
                if (j > 0) cb = cb * static_cast<long>(b - j + 1) / static_cast<long>(j);
                Monomial m = Monomial::var(Var::t, i) * Monomial::var(Var::s, j) * rest;
                Rational contrib = term.c * ca * tp[a - i] * cb * sp[b - j];
                auto [it, fresh] = acc.try_emplace(m.key, 0);
                it->second += contrib;
            }
        }
    }
    std::vector<Term> terms;
    for (auto& [key, c] : acc) {
        if (c == 0) continue;
        Monomial m;
        m.key = key;
        terms.push_back({m, std::move(c)});
    }
    return MultiPoly::from_terms(std::move(terms));
}

/// Newton-lift a simple rational root of the specialized polynomial to a
/// power-series branch of eta around the base point.
inline std::optional<MultiPoly> newton_lift(const std::vector<MultiPoly>& coeffs,
                                            const Rational& root, int prec) {
    std::vector<MultiPoly> dcoeffs;
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        dcoeffs.push_back(coeffs[k] * Rational(static_cast<long>(k)));
    MultiPoly w = MultiPoly::constant(root);
    // derivative at the root must be a unit in the power-series ring
    {
        MultiPoly d0 = series::eval_at_series(dcoeffs, w, 1);
        if (d0.is_zero()) return std::nullopt;
    }
    for (int k = 1; k < prec; k *= 2) {
        int target = std::min(2 * k, prec);
        MultiPoly Ew = series::eval_at_series(coeffs, w, target);
        if (Ew.is_zero()) break;
        MultiPoly Edw = series::eval_at_series(dcoeffs, w, target);
        MultiPoly inv = series::inv_trunc(Edw, target);
        w = series::truncate(w - series::mul_trunc(Ew, inv, target), target);
    }
    return w;
}

}  // namespace detail

/// All rational-function branches w = p(t,s)/q(t,s) of total degree at most
/// degree_bound with (q w - p) dividing eta.  `branch` names the linear
/// variable of eta (u, v or w); the base variables are whatever remains.
///
/// Output is canonical (sorted) and independent of the seed; `warning` is set
/// when some rational specialization root could not be matched to a branch
/// at this bound, meaning symmetries may exist beyond it.
inline std::vector<RationalFunction> extract_branches(const MultiPoly& eta_in, Var branch,
                                                      int degree_bound, int sample_budget,
                                                      std::uint64_t seed,
                                                      bool* warning = nullptr) {
    if (eta_in.is_zero()) fail(errc::internal, "extract_branches: zero input");
    MultiPoly eta = branch == Var::w ? eta_in : eta_in.rename(branch, Var::w);
    std::vector<RationalFunction> out;
    if (!eta.uses(Var::w)) return out;

    bool bivariate = eta.uses(Var::s);
    bool has_t = eta.uses(Var::t);
    std::vector<Var> base_vars;
    if (has_t) base_vars.push_back(Var::t);
    if (bivariate) base_vars.push_back(Var::s);

    if (base_vars.empty()) {
        for (const auto& r : rational_roots_univar(eta))
            out.push_back(RationalFunction::constant(r));
        std::sort(out.begin(), out.end(),
                  [](const RationalFunction& a, const RationalFunction& b) { return a.less_than(b); });
        return out;
    }

    eta = squarefree_part(eta, Var::w);
    auto wcoeffs = eta.coefficients_in(Var::w);

    if (eta.degree(Var::w) == 1) {
        out.push_back(RationalFunction(-wcoeffs[0], wcoeffs[1]));
        return out;
    }

    RandomStream rng(seed);
    int prec = 2 * degree_bound + 1;
    int unexplained = 0;
    int base_successes = 0;
    int budget = std::max(sample_budget, 12);

    for (int attempt = 0; attempt < budget && base_successes < 3; ++attempt) {
        Rational t0 = has_t ? rng.rational(6) : Rational(0);
        Rational s0 = bivariate ? rng.rational(6) : Rational(0);
        std::array<std::optional<Rational>, kNumVars> at{};
        at[var_index(Var::t)] = t0;
        at[var_index(Var::s)] = s0;
        MultiPoly e0 = eta.eval_partial(at);
        if (e0.degree(Var::w) != eta.degree(Var::w)) continue;
        // roots must stay simple under specialization
        auto [c0, z0] = to_zpoly(e0, Var::w);
        if (zpoly_deg(zpoly_gcd(z0, zpoly_derivative(z0))) != 0) continue;
        ++base_successes;

        std::vector<Rational> roots = zpoly_rational_roots(z0);
        if (roots.empty()) continue;

        MultiPoly shifted = detail::shift_truncated(eta, t0, s0, prec);
        auto coeffs = shifted.coefficients_in(Var::w);

        for (const Rational& r : roots) {
            bool known = false;
            for (const auto& f : out) {
                auto v = f.eval2(t0, s0);
                if (v && *v == r) known = true;
            }
            if (known) continue;
            auto ser = detail::newton_lift(coeffs, r, prec);
            if (!ser) {
                ++unexplained;
                continue;
            }
            auto cand = pade_from_series(*ser, base_vars, degree_bound);
            if (!cand) {
                ++unexplained;
                continue;
            }
            // shift back to global coordinates
            MultiPoly p = cand->num(), q = cand->den();
            if (has_t && t0 != 0) {
                MultiPoly back_t = MultiPoly::variable(Var::t) - MultiPoly::constant(t0);
                p = p.subst_poly(Var::t, back_t);
                q = q.subst_poly(Var::t, back_t);
            }
            if (bivariate && s0 != 0) {
                MultiPoly back_s = MultiPoly::variable(Var::s) - MultiPoly::constant(s0);
                p = p.subst_poly(Var::s, back_s);
                q = q.subst_poly(Var::s, back_s);
            }
            RationalFunction f(p, q);
            MultiPoly divisor =
                (f.den() * MultiPoly::variable(Var::w) - f.num()).primitive_part();
            if (eta.divide_exact(divisor).has_value()) {
                bool dup = false;
                for (const auto& g : out) dup = dup || g == f;
                if (!dup) out.push_back(f);
            } else {
                ++unexplained;
            }
        }
    }
    if (warning && unexplained > 0) *warning = true;
    std::sort(out.begin(), out.end(),
              [](const RationalFunction& a, const RationalFunction& b) { return a.less_than(b); });
    return out;
}

/// Substitute u = psi1 into both xi's, take the gcd, and solve its factors
/// linear in v.  Empty when the branch dies (gcd free of v).
inline std::vector<RationalFunction> recover_psi2(const XiSystem& sys,
                                                  const RationalFunction& psi1, int degree_bound,
                                                  int sample_budget, std::uint64_t seed) {
    MultiPoly a = substitute_rational_cleared(sys.xi1, Var::u, psi1.num(), psi1.den());
    MultiPoly b = substitute_rational_cleared(sys.xi2, Var::u, psi1.num(), psi1.den());
    if (a.is_zero() && b.is_zero()) return {};
    MultiPoly g = gcd_poly(a, b);
    if (g.degree(Var::v) < 1) return {};
    g = squarefree_part(g, Var::v);
    if (g.degree(Var::v) == 1) {
        auto cs = g.coefficients_in(Var::v);
        return {RationalFunction(-cs[0], cs[1])};
    }
    return extract_branches(g, Var::v, degree_bound, sample_budget, seed);
}

/// Both xi's must vanish identically under (u,v) = (psi1, psi2).
inline bool verify_candidate(const XiSystem& sys, const CremonaCandidate& cand) {
    RationalFunction s1 = substitute_pair(RationalFunction(sys.xi1), cand.psi1, cand.psi2);
    if (!s1.is_zero()) return false;
    RationalFunction s2 = substitute_pair(RationalFunction(sys.xi2), cand.psi1, cand.psi2);
    return s2.is_zero();
}

// ---------------------------------------------------------------------------
// System-level branch extraction.
//
// Res_v(xi1, xi2) can be orders of magnitude larger than the branches it
// carries (the worked example reaches degree ~190 with an enormous content
// free of u).  The pipeline therefore finds the reparametrization pairs
// without materializing the resultant: specialize (t,s) at a random sample,
// compute the finitely many rational common (u,v) roots through a bivariate
// resultant (which IS eta at the sample) plus a gcd, lift both coordinates
// at once by a 2x2 Newton iteration in the power-series ring, and close with
// a Pade step and the exact verify_candidate gate.

struct SystemExtraction {
    std::vector<CremonaCandidate> candidates;  // verified, canonical order
    bool warning = false;                      // some sample root did not lift
};

namespace detail {

/// Coefficient table of p with respect to (u, v): entry [i][j] multiplies
/// u^i v^j and is a polynomial in (t, s).
inline std::vector<std::vector<MultiPoly>> uv_table(const MultiPoly& p) {
    std::vector<std::vector<MultiPoly>> out;
    auto cu = p.coefficients_in(Var::u);
    for (auto& ci : cu) {
        out.push_back(ci.coefficients_in(Var::v));
    }
    return out;
}

/// Evaluate a (u,v)-coefficient table at a pair of (t,s)-series, truncated.
inline MultiPoly eval_table(const std::vector<std::vector<MultiPoly>>& table, const MultiPoly& U,
                            const MultiPoly& V, int prec) {
    MultiPoly acc = MultiPoly::zero();
    for (std::size_t i = table.size(); i-- > 0;) {
        MultiPoly inner = MultiPoly::zero();
        for (std::size_t j = table[i].size(); j-- > 0;) {
            inner = series::mul_trunc(inner, V, prec) + table[i][j];
        }
        acc = series::mul_trunc(acc, U, prec) + inner;
    }
    return acc;
}

}  // namespace detail

/// Verified reparametrization candidates of one xi-system, by simultaneous
/// power-series lifting of the common (u,v) roots at random samples.
inline SystemExtraction system_candidates(const XiSystem& sys, int degree_bound,
                                          int sample_budget, std::uint64_t seed) {
    SystemExtraction out;
    RandomStream rng(seed);
    int prec = 2 * degree_bound + 1;
    int budget = std::max(sample_budget, 12);
    int successes = 0;
    std::vector<std::array<Rational, 4>> unexplained;  // (t0, s0, u0, v0)

    MultiPoly xi1u = sys.xi1.derivative(Var::u), xi1v = sys.xi1.derivative(Var::v);
    MultiPoly xi2u = sys.xi2.derivative(Var::u), xi2v = sys.xi2.derivative(Var::v);

    for (int attempt = 0; attempt < budget && successes < 3; ++attempt) {
        Rational t0 = rng.rational(6), s0 = rng.rational(6);
        std::array<std::optional<Rational>, kNumVars> at{};
        at[var_index(Var::t)] = t0;
        at[var_index(Var::s)] = s0;
        MultiPoly A = sys.xi1.eval_partial(at);
        MultiPoly B = sys.xi2.eval_partial(at);
        if (A.is_zero() || B.is_zero()) continue;
        if (A.degree(Var::v) != sys.xi1.degree(Var::v) ||
            B.degree(Var::v) != sys.xi2.degree(Var::v))
            continue;
        // eta_1 specialized at the sample
        MultiPoly R = A.uses(Var::v) && B.uses(Var::v)
                          ? detail::resultant_dense_bivar(A, B, Var::v, Var::u)
                          : resultant(A, B, Var::v);
        if (R.is_zero()) continue;
        if (!R.uses(Var::u)) {
            ++successes;  // no candidate u-roots at this sample
            continue;
        }
        auto uroots = rational_roots_univar(squarefree_part(R, Var::u));
        ++successes;
        if (uroots.empty()) continue;

        // lifting environment at this base point
        bool shifted_ready = false;
        std::vector<std::vector<MultiPoly>> T1, T2, T1u, T1v, T2u, T2v;

        for (const Rational& u0 : uroots) {
            MultiPoly Au = A.eval_var(Var::u, u0);
            MultiPoly Bu = B.eval_var(Var::u, u0);
            MultiPoly g = gcd_poly(Au, Bu);
            std::vector<Rational> vroots;
            if (g.is_constant())
                continue;
            else
                vroots = rational_roots_univar(g);
            for (const Rational& v0 : vroots) {
                bool known = false;
                for (const auto& c : out.candidates) {
                    auto pu = c.psi1.eval2(t0, s0);
                    auto pv = c.psi2.eval2(t0, s0);
                    if (pu && pv && *pu == u0 && *pv == v0) known = true;
                }
                if (known) continue;
                if (!shifted_ready) {
                    T1 = detail::uv_table(detail::shift_truncated(sys.xi1, t0, s0, prec));
                    T2 = detail::uv_table(detail::shift_truncated(sys.xi2, t0, s0, prec));
                    T1u = detail::uv_table(detail::shift_truncated(xi1u, t0, s0, prec));
                    T1v = detail::uv_table(detail::shift_truncated(xi1v, t0, s0, prec));
                    T2u = detail::uv_table(detail::shift_truncated(xi2u, t0, s0, prec));
                    T2v = detail::uv_table(detail::shift_truncated(xi2v, t0, s0, prec));
                    shifted_ready = true;
                }
                // Jacobian must be a unit at the root
                MultiPoly U = MultiPoly::constant(u0), V = MultiPoly::constant(v0);
                auto jac_det = [&](int target) {
                    MultiPoly j11 = detail::eval_table(T1u, U, V, target);
                    MultiPoly j12 = detail::eval_table(T1v, U, V, target);
                    MultiPoly j21 = detail::eval_table(T2u, U, V, target);
                    MultiPoly j22 = detail::eval_table(T2v, U, V, target);
                    return std::array<MultiPoly, 5>{
                        j11, j12, j21, j22,
                        series::mul_trunc(j11, j22, target) - series::mul_trunc(j12, j21, target)};
                };
                {
                    auto j0 = jac_det(1);
                    if (j0[4].is_zero()) {
                        unexplained.push_back({t0, s0, u0, v0});
                        continue;
                    }
                }
                for (int k = 1; k < prec; k *= 2) {
                    int target = std::min(2 * k, prec);
                    MultiPoly E1 = detail::eval_table(T1, U, V, target);
                    MultiPoly E2 = detail::eval_table(T2, U, V, target);
                    if (E1.is_zero() && E2.is_zero()) break;
                    auto j = jac_det(target);
                    MultiPoly dinv = series::inv_trunc(j[4], target);
                    MultiPoly du = series::mul_trunc(
                        series::mul_trunc(j[3], E1, target) - series::mul_trunc(j[1], E2, target),
                        dinv, target);
                    MultiPoly dv = series::mul_trunc(
                        series::mul_trunc(j[0], E2, target) - series::mul_trunc(j[2], E1, target),
                        dinv, target);
                    U = series::truncate(U - du, target);
                    V = series::truncate(V - dv, target);
                }
                auto p1 = pade_from_series(U, {Var::t, Var::s}, degree_bound);
                auto p2 = pade_from_series(V, {Var::t, Var::s}, degree_bound);
                if (!p1 || !p2) {
                    unexplained.push_back({t0, s0, u0, v0});
                    continue;
                }
                // back to global coordinates
                auto shift_back = [&](const RationalFunction& f) {
                    MultiPoly bt = MultiPoly::variable(Var::t) - MultiPoly::constant(t0);
                    MultiPoly bs = MultiPoly::variable(Var::s) - MultiPoly::constant(s0);
                    MultiPoly n = f.num().subst_poly(Var::t, bt).subst_poly(Var::s, bs);
                    MultiPoly d = f.den().subst_poly(Var::t, bt).subst_poly(Var::s, bs);
                    return RationalFunction(n, d);
                };
                CremonaCandidate cand{shift_back(*p1), shift_back(*p2), false};
                if (verify_candidate(sys, cand)) {
                    cand.verified = true;
                    bool dup = false;
                    for (const auto& c : out.candidates) dup = dup || c == cand;
                    if (!dup) out.candidates.push_back(cand);
                } else {
                    unexplained.push_back({t0, s0, u0, v0});
                }
            }
        }
    }
    // roots that a later sample explained are not extraction gaps
    for (const auto& gap : unexplained) {
        bool explained = false;
        for (const auto& c : out.candidates) {
            auto pu = c.psi1.eval2(gap[0], gap[1]);
            auto pv = c.psi2.eval2(gap[0], gap[1]);
            if (pu && pv && *pu == gap[2] && *pv == gap[3]) explained = true;
        }
        if (!explained) out.warning = true;
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const CremonaCandidate& a, const CremonaCandidate& b) { return a.less_than(b); });
    return out;
}

/// Exact test for the Algorithm-1 failure branch: both resultants vanish
/// identically iff a xi is zero or the xi's share a factor with positive
/// degree in u and in v.  A cheap nonzero sample certifies non-vanishing
/// before the exact gcd is attempted.
inline bool etas_both_zero(const XiSystem& sys, std::uint64_t seed = 99) {
    if (sys.xi1.is_zero() || sys.xi2.is_zero()) return true;
    RandomStream rng(seed);
    bool res_v_zero = true, res_u_zero = true;
    for (int attempt = 0; attempt < 24 && (res_v_zero || res_u_zero); ++attempt) {
        std::array<std::optional<Rational>, kNumVars> at{};
        at[var_index(Var::t)] = rng.rational(8);
        at[var_index(Var::s)] = rng.rational(8);
        if (res_v_zero) {
            std::array<std::optional<Rational>, kNumVars> atu = at;
            atu[var_index(Var::u)] = rng.rational(8);
            MultiPoly a = sys.xi1.eval_partial(atu), b = sys.xi2.eval_partial(atu);
            if (!a.is_zero() && !b.is_zero() && !resultant(a, b, Var::v).is_zero())
                res_v_zero = false;
        }
        if (res_u_zero) {
            std::array<std::optional<Rational>, kNumVars> atv = at;
            atv[var_index(Var::v)] = rng.rational(8);
            MultiPoly a = sys.xi1.eval_partial(atv), b = sys.xi2.eval_partial(atv);
            if (!a.is_zero() && !b.is_zero() && !resultant(a, b, Var::u).is_zero())
                res_u_zero = false;
        }
    }
    if (!res_v_zero || !res_u_zero) return false;
    // confirm exactly: a common factor with positive degree in both variables
    MultiPoly g = gcd_poly(sys.xi1, sys.xi2);
    return g.degree(Var::u) >= 1 && g.degree(Var::v) >= 1;
}

}  // namespace surfsym

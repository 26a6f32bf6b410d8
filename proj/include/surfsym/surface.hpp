/// Surface and curve parametrizations with the construction-time sanity
/// checks: regularity spot-checks and the properness heuristics.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "surfsym/ratfunc.hpp"
#include "surfsym/resultant.hpp"

namespace surfsym {

namespace detail {

/// Cross-multiplied matching equations x(t,s) = x(t0,s0), one per component.
inline std::array<MultiPoly, 3> point_match_system(const RFVec3& x, const QVec3& p0) {
    std::array<MultiPoly, 3> out;
    for (int i = 0; i < 3; ++i) {
        out[i] = x[i].num() - MultiPoly::constant(p0[i]) * x[i].den();
        out[i] = out[i].is_zero() ? out[i] : out[i].primitive_part();
    }
    return out;
}

}  // namespace detail

/// Check at one random rational point that the only rational preimage of
/// x(t0,s0) is (t0,s0) itself.  Heuristic: certifies properness with high
/// probability, and always detects rational non-properness witnesses.
inline bool surface_properness_heuristic(const RFVec3& x, RandomStream& rng) {
    // find a usable base point
    std::optional<QVec3> p0;
    Rational t0, s0;
    for (int tries = 0; tries < 64 && !p0; ++tries) {
        t0 = rng.rational(8);
        s0 = rng.rational(8);
        p0 = eval2(x, t0, s0);
    }
    if (!p0) return false;

    auto F = detail::point_match_system(x, *p0);
    MultiPoly g = gcd_poly(F[0], gcd_poly(F[1], F[2]));
    if (!g.is_constant()) return false;  // a whole curve of preimages

    // candidate t-values: common roots of the pairwise resultants in s
    MultiPoly rgcd = MultiPoly::zero();
    bool any = false;
    const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto [i, j] : pairs) {
        if (F[i].is_zero() || F[j].is_zero()) continue;
        if (F[i].degree(Var::s) < 1 && F[j].degree(Var::s) < 1) continue;
        MultiPoly r = resultant(F[i], F[j], Var::s);
        if (r.is_zero()) continue;
        rgcd = gcd_poly(rgcd, r);
        any = true;
    }
    if (!any) return false;
    std::vector<Rational> tcands;
    if (rgcd.is_constant()) {
        tcands.push_back(t0);
    } else {
        tcands = rational_roots_univar(rgcd);
        tcands.push_back(t0);
    }
    for (const auto& tc : tcands) {
        MultiPoly gs = MultiPoly::zero();
        for (int i = 0; i < 3; ++i) gs = gcd_poly(gs, F[i].eval_var(Var::t, tc));
        std::vector<Rational> scands;
        if (gs.is_zero())
            continue;  // impossible: would have been caught by the gcd test
        else if (gs.is_constant())
            continue;
        else
            scands = rational_roots_univar(gs);
        for (const auto& sc : scands) {
            if (tc == t0 && sc == s0) continue;
            auto img = eval2(x, tc, sc);
            if (img && *img == *p0) return false;  // genuine second preimage
        }
    }
    return true;
}

/// Exact curve properness: gcd of the cross-multiplied components of
/// c(t) - c(w) must have degree 1 in w.
inline bool curve_is_proper(const RFVec3& c) {
    MultiPoly g = MultiPoly::zero();
    for (int i = 0; i < 3; ++i) {
        MultiPoly f = c[i].num() * c[i].den().rename(Var::t, Var::w) -
                      c[i].num().rename(Var::t, Var::w) * c[i].den();
        g = gcd_poly(g, f);
        if (g.is_constant() && !g.is_zero()) return false;  // no common (t - w) factor
    }
    return g.degree(Var::w) == 1;
}

class SurfaceParam {
  public:
    /// `proper_warning` switches the properness heuristic from a hard error
    /// to a reported warning (the pipeline mode).
    static SurfaceParam create(RFVec3 components, bool check_proper = true,
                               bool* proper_warning = nullptr) {
        for (const auto& c : components) {
            unsigned extra = c.support() & ~((1u << var_index(Var::t)) | (1u << var_index(Var::s)));
            if (extra != 0) fail(errc::degenerate_parametrization, "surface components must use only t, s");
        }
        SurfaceParam x;
        x.comp_ = std::move(components);
        RandomStream rng(0xfacade);
        // regularity spot-check at 5 random points
        RFVec3 xt = derivative(x.comp_, Var::t), xs = derivative(x.comp_, Var::s);
        RFVec3 n = cross(xt, xs);
        if (is_zero(n)) fail(errc::degenerate_parametrization, "degenerate parametrization");
        int good = 0;
        for (int tries = 0; tries < 200 && good < 5; ++tries) {
            Rational tv = rng.rational(10), sv = rng.rational(10);
            auto nv = eval2(n, tv, sv);
            if (!nv) continue;
            if ((*nv)[0] == 0 && (*nv)[1] == 0 && (*nv)[2] == 0) continue;
            ++good;
        }
        if (good < 5) fail(errc::degenerate_parametrization, "degenerate parametrization");
        if (check_proper && !surface_properness_heuristic(x.comp_, rng)) {
            if (proper_warning)
                *proper_warning = true;
            else
                fail(errc::not_proper, "input not proper");
        }
        return x;
    }

    const RFVec3& components() const { return comp_; }
    const RationalFunction& operator[](int i) const { return comp_[i]; }

    int degree_max() const {
        int d = 0;
        for (const auto& c : comp_) d = std::max(d, c.degree_max());
        return d;
    }

  private:
    SurfaceParam() = default;
    RFVec3 comp_;
};

class CurveParam {
  public:
    static CurveParam create(RFVec3 components, bool check_proper = false) {
        for (const auto& c : components) {
            unsigned extra = c.support() & ~(1u << var_index(Var::t));
            if (extra != 0) fail(errc::degenerate_parametrization, "curve components must use only t");
        }
        CurveParam c;
        c.comp_ = std::move(components);
        if (is_zero(derivative(c.comp_, Var::t)))
            fail(errc::degenerate_parametrization, "degenerate parametrization");
        if (check_proper && !curve_is_proper(c.comp_)) fail(errc::not_proper, "input not proper");
        return c;
    }

    const RFVec3& components() const { return comp_; }
    const RationalFunction& operator[](int i) const { return comp_[i]; }

  private:
    CurveParam() = default;
    RFVec3 comp_;
};

}  // namespace surfsym

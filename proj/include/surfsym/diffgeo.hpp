/// Differential invariants of rational surfaces and space curves.
///
/// Second-form entries are stored pre-multiplied by W = |x_t x x_s| so every
/// stored quantity is rational; the curvature formulas are rewritten
/// accordingly and stay exact.
#pragma once

#include <optional>

#include "surfsym/surface.hpp"

namespace surfsym {

/// N = x_t x x_s, the unnormalized normal.
inline RFVec3 normal_unnormalized(const SurfaceParam& x) {
    RFVec3 n = cross(derivative(x.components(), Var::t), derivative(x.components(), Var::s));
    if (is_zero(n)) fail(errc::degenerate_parametrization, "degenerate parametrization");
    return n;
}

struct FundamentalForms {
    RationalFunction E, F, G;     // first form
    RationalFunction L2, M2, N2;  // second form scaled by W
    RationalFunction Wsq;         // EG - F^2 = |N|^2
};

inline FundamentalForms fundamental_forms(const SurfaceParam& x) {
    RFVec3 xt = derivative(x.components(), Var::t);
    RFVec3 xs = derivative(x.components(), Var::s);
    RFVec3 n = cross(xt, xs);
    FundamentalForms f;
    f.E = dot(xt, xt);
    f.F = dot(xt, xs);
    f.G = dot(xs, xs);
    f.L2 = dot(derivative(xt, Var::t), n);
    f.M2 = dot(derivative(xt, Var::s), n);
    f.N2 = dot(derivative(xs, Var::s), n);
    f.Wsq = f.E * f.G - f.F * f.F;
    if (f.Wsq.is_zero()) fail(errc::degenerate_parametrization, "degenerate parametrization");
    return f;
}

inline RationalFunction gauss_curvature(const FundamentalForms& f) {
    return (f.L2 * f.N2 - f.M2 * f.M2) / (f.Wsq * f.Wsq);
}

inline RationalFunction gauss_curvature(const SurfaceParam& x) {
    return gauss_curvature(fundamental_forms(x));
}

inline RationalFunction mean_curvature_squared(const FundamentalForms& f) {
    RationalFunction num = f.E * f.N2 + f.G * f.L2 - RationalFunction::constant(2) * f.F * f.M2;
    return (num * num) / (RationalFunction::constant(4) * f.Wsq.pow(3));
}

inline RationalFunction mean_curvature_squared(const SurfaceParam& x) {
    return mean_curvature_squared(fundamental_forms(x));
}

namespace detail {

/// Exact square root of a polynomial by leading-term descent; the content
/// must be the square of a rational.
inline std::optional<MultiPoly> poly_sqrt(const MultiPoly& p) {
    if (p.is_zero()) return MultiPoly::zero();
    Rational c = p.content();
    if (c < 0) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(c.get_den().get_mpz_t()))
        return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), c.get_den().get_mpz_t());
    MultiPoly p0 = p / c;  // primitive, positive lc

    const Term& lead = p0.leading_term();
    std::array<unsigned, kNumVars> he{};
    for (int i = 0; i < kNumVars; ++i) {
        unsigned e = lead.m.exp(i);
        if (e % 2 != 0) return std::nullopt;
        he[i] = e / 2;
    }
    if (!mpz_perfect_square_p(lead.c.get_num().get_mpz_t())) return std::nullopt;
    Integer rl;
    mpz_sqrt(rl.get_mpz_t(), lead.c.get_num().get_mpz_t());
    MultiPoly r = MultiPoly::term(Monomial::from_exponents(he), Rational(rl));
    MultiPoly residual = p0 - r * r;
    std::size_t guard = (p0.term_count() + 2) * (p0.term_count() + 2);
    while (!residual.is_zero() && guard-- > 0) {
        const Term& rt = residual.leading_term();
        const Term& rlt = r.leading_term();
        if (!rlt.m.divides(rt.m)) return std::nullopt;
        Term next{rt.m / rlt.m, rt.c / (2 * rlt.c)};
        if (!(next.m < rlt.m)) return std::nullopt;
        r += MultiPoly::term(next.m, next.c);
        residual = p0 - r * r;
    }
    if (!residual.is_zero()) return std::nullopt;
    return r * make_rational(sn, sd);
}

}  // namespace detail

/// If EG - F^2 is the square of a rational function, return that root with
/// positive leading sign (the PN-surface witness); absent otherwise.
inline std::optional<RationalFunction> pn_check(const FundamentalForms& f) {
    auto rn = detail::poly_sqrt(f.Wsq.num());
    if (!rn) return std::nullopt;
    auto rd = detail::poly_sqrt(f.Wsq.den());
    if (!rd) return std::nullopt;
    RationalFunction w(*rn, *rd);
    if (w.num().is_zero()) return std::nullopt;
    if (w.num().content() < 0) w = -w;
    return w;
}

inline std::optional<RationalFunction> pn_check(const SurfaceParam& x) {
    return pn_check(fundamental_forms(x));
}

/// kappa^2 = |c' x c''|^2 / |c'|^6.
inline RationalFunction curve_curvature_sq(const CurveParam& c) {
    RFVec3 d1 = derivative(c.components(), Var::t);
    RFVec3 d2 = derivative(d1, Var::t);
    RFVec3 cr = cross(d1, d2);
    if (is_zero(cr)) fail(errc::curve_is_line, "curve is a line");
    return dot(cr, cr) / dot(d1, d1).pow(3);
}

/// tau = [c', c'', c'''] / |c' x c''|^2.
inline RationalFunction curve_torsion(const CurveParam& c) {
    RFVec3 d1 = derivative(c.components(), Var::t);
    RFVec3 d2 = derivative(d1, Var::t);
    RFVec3 d3 = derivative(d2, Var::t);
    RFVec3 cr = cross(d1, d2);
    if (is_zero(cr)) fail(errc::curve_is_line, "curve is a line");
    return mixed_product(d1, d2, d3) / dot(cr, cr);
}

}  // namespace surfsym

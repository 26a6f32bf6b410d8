/// Recovering rational functions from data: dense point-sample
/// reconstruction, and truncated power series with bivariate Pade
/// approximation (the engine behind branch extraction).
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "surfsym/qlinalg.hpp"
#include "surfsym/ratfunc.hpp"

namespace surfsym {

struct Sample {
    Rational t, s;
    Rational value;
};

namespace detail {

inline std::vector<Monomial> monomials_up_to(const std::vector<Var>& vars, int d) {
    std::vector<Monomial> out;
    if (vars.size() == 1) {
        for (int e = 0; e <= d; ++e) out.push_back(Monomial::var(vars[0], static_cast<unsigned>(e)));
    } else {
        assert(vars.size() == 2);
        for (int e0 = 0; e0 <= d; ++e0)
            for (int e1 = 0; e0 + e1 <= d; ++e1)
                out.push_back(Monomial::var(vars[0], static_cast<unsigned>(e0)) *
                              Monomial::var(vars[1], static_cast<unsigned>(e1)));
    }
    return out;
}

inline Rational eval_monomial(const Monomial& m, const Rational& tv, const Rational& sv) {
    Rational r(1);
    r *= MultiPoly::pow_rational(tv, m.exp(Var::t));
    r *= MultiPoly::pow_rational(sv, m.exp(Var::s));
    return r;
}

}  // namespace detail

/// The unique reduced rational function in (t, s) of total degree <= bound on
/// numerator and denominator agreeing with every sample; the last up-to-10
/// samples are held out of the linear system and used as verification.
inline RationalFunction reconstruct_rational_function(const std::vector<Sample>& samples,
                                                      int degree_bound) {
    std::size_t required = static_cast<std::size_t>((degree_bound + 1) * (degree_bound + 2));
    if (samples.size() < required)
        fail(errc::no_consistent_branch, "no consistent branch: too few samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].t == samples[j].t && samples[i].s == samples[j].s)
                fail(errc::no_consistent_branch, "no consistent branch: repeated sample point");

    std::size_t held = std::min<std::size_t>(10, samples.size() - required);
    std::size_t sys_n = samples.size() - held;
    std::vector<Var> vars{Var::t, Var::s};

    for (int d = 0; d <= degree_bound; ++d) {
        auto monos = detail::monomials_up_to(vars, d);
        std::size_t m = monos.size();
        QMatrix sys(sys_n, QVector(2 * m, Rational(0)));
        for (std::size_t i = 0; i < sys_n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Rational mv = detail::eval_monomial(monos[j], samples[i].t, samples[i].s);
                sys[i][j] = mv;
                sys[i][m + j] = -samples[i].value * mv;
            }
        }
        auto kernel = nullspace(std::move(sys));
        if (kernel.empty()) continue;
        if (kernel.size() > 1)
            fail(errc::no_consistent_branch, "no consistent branch: ambiguous reconstruction");
        std::vector<Term> nt, dt;
        for (std::size_t j = 0; j < m; ++j) {
            if (kernel[0][j] != 0) nt.push_back({monos[j], kernel[0][j]});
            if (kernel[0][m + j] != 0) dt.push_back({monos[j], kernel[0][m + j]});
        }
        MultiPoly den = MultiPoly::from_terms(std::move(dt));
        if (den.is_zero()) continue;
        RationalFunction f(MultiPoly::from_terms(std::move(nt)), den);
        bool ok = true;
        for (const auto& sm : samples) {
            auto v = f.eval2(sm.t, sm.s);
            if (!v || *v != sm.value) {
                ok = false;
                break;
            }
        }
        if (ok) return f;
    }
    fail(errc::no_consistent_branch, "no consistent branch");
}

// ---------------------------------------------------------------------------
// Truncated power series in the base variables (total-degree truncation).

namespace series {

/// Drop monomials of total degree >= prec in the base variables (branch
/// variable exponents do not count toward the truncation order).
inline MultiPoly truncate(const MultiPoly& p, int prec, Var branch = Var::w) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        unsigned base_deg = t.m.degree() - t.m.exp(branch);
        if (static_cast<int>(base_deg) < prec) out.push_back(t);
    }
    return MultiPoly::from_terms(std::move(out));
}

inline MultiPoly mul_trunc(const MultiPoly& a, const MultiPoly& b, int prec, Var branch = Var::w) {
    return truncate(a * b, prec, branch);
}

/// Multiplicative inverse of a series with nonzero constant term, mod
/// total degree `prec`.
inline MultiPoly inv_trunc(const MultiPoly& f, int prec, Var branch = Var::w) {
    MultiPoly c0 = MultiPoly::constant(Rational(1) / f.terms().back().c);
    // Newton: g <- g (2 - f g), doubling precision
    MultiPoly g = c0;
    for (int k = 1; k < prec; k *= 2) {
        int target = std::min(2 * k, prec);
        MultiPoly fg = mul_trunc(f, g, target, branch);
        g = mul_trunc(g, MultiPoly::constant(Rational(2)) - fg, target, branch);
    }
    return g;
}

/// Evaluate a polynomial in `branch` at a series value, truncated.
inline MultiPoly eval_at_series(const std::vector<MultiPoly>& coeffs, const MultiPoly& w, int prec,
                                Var branch = Var::w) {
    MultiPoly acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = mul_trunc(acc, w, prec, branch) + coeffs[k];
    return acc;
}

}  // namespace series

/// Minimal-degree Pade form p/q (total degree <= bound in the base vars) of a
/// series known mod total degree 2*bound+1; nullopt when no form fits.
inline std::optional<RationalFunction> pade_from_series(const MultiPoly& f,
                                                        const std::vector<Var>& base_vars,
                                                        int bound) {
    int prec = 2 * bound + 1;
    for (int d = 0; d <= bound; ++d) {
        auto qmonos = detail::monomials_up_to(base_vars, d);
        // equations: coefficient of every monomial of total degree in (d, prec)
        // of f*q must vanish
        auto all
            = detail::monomials_up_to(base_vars, prec - 1);
        std::vector<Monomial> eqs;
        for (const auto& m : all)
            if (static_cast<int>(m.degree()) > d) eqs.push_back(m);

        QMatrix sys(eqs.size(), QVector(qmonos.size(), Rational(0)));
        for (std::size_t j = 0; j < qmonos.size(); ++j) {
            MultiPoly fm = series::truncate(f * MultiPoly::term(qmonos[j], Rational(1)), prec);
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                for (const auto& t : fm.terms())
                    if (t.m == eqs[i]) sys[i][j] = t.c;
            }
        }
        auto kernel = nullspace(std::move(sys));
        for (const auto& qvec : kernel) {
            std::vector<Term> qt;
            for (std::size_t j = 0; j < qmonos.size(); ++j)
                if (qvec[j] != 0) qt.push_back({qmonos[j], qvec[j]});
            MultiPoly q = MultiPoly::from_terms(std::move(qt));
            if (q.is_zero()) continue;
            // branch denominators must not vanish at the base point (origin)
            bool q_const_nonzero = false;
            for (const auto& t : q.terms())
                if (t.m.is_one() && t.c != 0) q_const_nonzero = true;
            if (!q_const_nonzero) continue;
            MultiPoly p = series::truncate(f * q, d + 1);
            // full congruence check: f*q - p must vanish mod the precision
            if (!series::truncate(f * q - p, prec).is_zero()) continue;
            return RationalFunction(p, q);
        }
    }
    return std::nullopt;
}

}  // namespace surfsym

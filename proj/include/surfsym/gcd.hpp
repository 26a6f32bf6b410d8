/// Multivariate gcd over Q: evaluation/interpolation with leading-coefficient
/// normalization, verified by exact trial division, with a primitive-PRS
/// fallback.  Also squarefree parts, which keep resultant inputs small.
#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "surfsym/multipoly.hpp"
#include "surfsym/upoly.hpp"

namespace surfsym {

namespace detail {

inline Monomial monomial_gcd(const MultiPoly& p) {
    std::array<unsigned, kNumVars> mins{};
    mins.fill(kMaxExp);
    for (const auto& t : p.terms())
        for (int i = 0; i < kNumVars; ++i) mins[i] = std::min(mins[i], t.m.exp(i));
    return Monomial::from_exponents(mins);
}

inline MultiPoly divide_monomial(const MultiPoly& p, const Monomial& m) {
    if (m.is_one()) return p;
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) out.push_back({t.m / m, t.c});
    return MultiPoly::from_terms(std::move(out));
}

}  // namespace detail

inline MultiPoly gcd_poly(const MultiPoly& a, const MultiPoly& b);

namespace detail {

/// Dense modular gcd of two integer-primitive bivariate polynomials in
/// (x, z): per prime, univariate gcds mod p along z-slices are normalized by
/// the leading-coefficient gcd and interpolated; primes are CRT-combined and
/// the stabilized candidate must divide both inputs exactly.
inline std::optional<MultiPoly> gcd_bivar_modular(const MultiPoly& A_in, const MultiPoly& B_in,
                                                  Var x, Var z) {
    // split off the contents with respect to x (univariate in z)
    auto content_x = [&](const MultiPoly& p) {
        ZPoly c{};
        for (const auto& coef : p.coefficients_in(x)) {
            if (coef.is_zero()) continue;
            auto [cc, zc] = to_zpoly(coef, z);
            Integer ic = cc.get_num();  // integer-primitive input: content is integral
            for (auto& v : zc) v *= ic;
            c = zpoly_gcd(c, zc);
            if (zpoly_deg(c) == 0 && !c.empty() && (c[0] == 1 || c[0] == -1)) break;
        }
        return c;
    };
    ZPoly contA = content_x(A_in), contB = content_x(B_in);
    MultiPoly cont_gcd = from_zpoly(zpoly_gcd(contA, contB), z);
    MultiPoly A = A_in, B = B_in;
    if (!(zpoly_deg(contA) == 0 && abs(contA.empty() ? Integer(1) : contA[0]) == 1))
        A = *A_in.divide_exact(from_zpoly(contA, z));
    if (!(zpoly_deg(contB) == 0 && abs(contB.empty() ? Integer(1) : contB[0]) == 1))
        B = *B_in.divide_exact(from_zpoly(contB, z));
    A = A.primitive_part();
    B = B.primitive_part();
    if (A.degree(x) < 1 || B.degree(x) < 1) {
        // after content removal one operand is free of x: pp-gcd is trivial
        return cont_gcd.primitive_part();
    }

    auto lc_as_zpoly = [&](const MultiPoly& p) { return to_zpoly(p.coefficients_in(x).back(), z); };
    auto [cga, lcA] = lc_as_zpoly(A);
    auto [cgb, lcB] = lc_as_zpoly(B);
    ZPoly gamma = zpoly_gcd(lcA, lcB);
    {
        // the full gcd of the leading coefficients includes the integer content
        Integer cc = gcd(abs(cga.get_num()), abs(cgb.get_num()));
        for (auto& c : gamma) c *= cc;
    }
    int gz = zpoly_deg(gamma);
    int zbound = std::min(A.degree(z), B.degree(z)) + std::max(gz, 0);
    int dxa = A.degree(x), dxb = B.degree(x);

    // dense images: index [i][j] = coeff of x^i z^j
    auto dense_of = [&](const MultiPoly& p, std::uint64_t pr,
                        std::vector<PPoly>& out) -> bool {
        out.assign(static_cast<std::size_t>(p.degree(x)) + 1, PPoly{});
        for (const auto& t : p.terms()) {
            std::uint64_t c;
            if (!mod_of(t.c, pr, c)) return false;
            PPoly& row = out[t.m.exp(x)];
            std::size_t j = t.m.exp(z);
            if (row.size() <= j) row.resize(j + 1, 0);
            row[j] = (row[j] + c) % pr;
        }
        return true;
    };

    PrimeStream primes(2147483029ull);
    int cur_deg = -1;
    std::vector<ZPoly> acc;  // CRT accumulation of x^i coefficients (in z)
    Integer modulus = 1;
    std::vector<ZPoly> last;
    bool have_last = false;

    for (int iter = 0; iter < 256; ++iter) {
        std::uint64_t pr = primes.next();
        std::vector<PPoly> Ap, Bp;
        if (!dense_of(A, pr, Ap) || !dense_of(B, pr, Bp)) continue;
        auto eval_z = [&](const std::vector<PPoly>& rows, std::uint64_t a) {
            PPoly out(rows.size(), 0);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::uint64_t v = 0;
                for (std::size_t j = rows[i].size(); j-- > 0;)
                    v = (mulmod(v, a, pr) + rows[i][j]) % pr;
                out[i] = v;
            }
            ppoly_trim(out);
            return out;
        };
        PPoly gamma_p;
        zpoly_mod_p(gamma, pr, gamma_p);
        if (ppoly_deg(gamma_p) != gz) continue;  // prime kills the lc gcd

        // interpolate the gcd image over z
        std::vector<std::uint64_t> nodes;
        std::vector<PPoly> values;  // per node, poly in x scaled to lc = gamma(a)
        int img_deg = -1;
        std::uint64_t a = 0;
        bool bad_prime = false;
        while (static_cast<int>(nodes.size()) <= zbound && a < pr) {
            std::uint64_t node = a++;
            PPoly Aa = eval_z(Ap, node), Ba = eval_z(Bp, node);
            if (ppoly_deg(Aa) != dxa || ppoly_deg(Ba) != dxb) continue;
            PPoly g = ppoly_gcd(Aa, Ba, pr);
            int dg = ppoly_deg(g);
            if (dg == 0) return cont_gcd.primitive_part();
            if (img_deg != -1 && dg > img_deg) continue;  // unlucky node
            if (img_deg == -1 || dg < img_deg) {
                img_deg = dg;
                nodes.clear();
                values.clear();
            }
            // scale to lc = gamma(node)
            std::uint64_t gval = 0;
            for (std::size_t j = gamma_p.size(); j-- > 0;)
                gval = (mulmod(gval, node, pr) + gamma_p[j]) % pr;
            if (gval == 0) continue;
            std::uint64_t sc = mulmod(gval, invmod(g.back(), pr), pr);
            for (auto& cc : g) cc = mulmod(cc, sc, pr);
            nodes.push_back(node);
            values.push_back(std::move(g));
        }
        if (static_cast<int>(nodes.size()) <= zbound) bad_prime = true;
        if (bad_prime) continue;
        if (cur_deg != -1 && img_deg > cur_deg) continue;  // unlucky prime
        if (cur_deg == -1 || img_deg < cur_deg) {
            cur_deg = img_deg;
            acc.clear();
            modulus = 1;
            have_last = false;
        }
        // per x-coefficient Newton interpolation over z, mod pr
        std::vector<ZPoly> img(static_cast<std::size_t>(img_deg) + 1);
        {
            std::vector<std::uint64_t> ys(nodes.size());
            for (int xi = 0; xi <= img_deg; ++xi) {
                for (std::size_t k = 0; k < nodes.size(); ++k)
                    ys[k] = static_cast<std::size_t>(xi) < values[k].size() ? values[k][xi] : 0;
                PPoly coef = ppoly_newton_interpolate(nodes, ys, pr);
                ZPoly zc(coef.size());
                for (std::size_t j = 0; j < coef.size(); ++j)
                    zc[j] = Integer(static_cast<unsigned long>(coef[j]));
                img[static_cast<std::size_t>(xi)] = std::move(zc);
            }
        }
        // CRT combine
        Integer pz(static_cast<unsigned long>(pr));
        if (modulus == 1) {
            acc = img;
            modulus = pz;
        } else {
            Integer minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
            if (acc.size() < img.size()) acc.resize(img.size());
            for (std::size_t i = 0; i < acc.size(); ++i) {
                std::size_t n = std::max(acc[i].size(), i < img.size() ? img[i].size() : 0);
                acc[i].resize(n, Integer(0));
                for (std::size_t j = 0; j < n; ++j) {
                    Integer want =
                        (i < img.size() && j < img[i].size()) ? img[i][j] : Integer(0);
                    Integer diff = ((want - acc[i][j] % pz) % pz + pz) % pz;
                    acc[i][j] += modulus * ((diff * minv) % pz);
                }
            }
            modulus *= pz;
        }
        // balanced lift + stabilization + division check
        std::vector<ZPoly> lifted(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            lifted[i].resize(acc[i].size());
            for (std::size_t j = 0; j < acc[i].size(); ++j) {
                Integer c = acc[i][j] % modulus;
                if (c < 0) c += modulus;
                if (c * 2 > modulus) c -= modulus;
                lifted[i][j] = c;
            }
        }
        if (have_last && lifted == last) {
            // the gamma scaling interpolates (gamma/lc_x(G)) * G; strip the
            // content with respect to x to recover G itself
            ZPoly hcont{};
            for (const auto& row : lifted) {
                if (row.empty()) continue;
                hcont = zpoly_gcd(hcont, row);
                if (zpoly_deg(hcont) == 0 && !hcont.empty() && hcont[0] == 1) break;
            }
            std::vector<Term> terms;
            bool content_ok = true;
            for (std::size_t i = 0; i < lifted.size() && content_ok; ++i) {
                ZPoly row = lifted[i];
                if (row.empty()) continue;
                if (!(zpoly_deg(hcont) == 0 && !hcont.empty() && hcont[0] == 1)) {
                    auto div = zpoly_try_divexact(row, hcont);
                    if (!div) {
                        content_ok = false;
                        break;
                    }
                    row = *div;
                }
                for (std::size_t j = 0; j < row.size(); ++j)
                    if (row[j] != 0)
                        terms.push_back({Monomial::var(x, static_cast<unsigned>(i)) *
                                             Monomial::var(z, static_cast<unsigned>(j)),
                                         Rational(row[j])});
            }
            if (content_ok) {
                MultiPoly cand = MultiPoly::from_terms(std::move(terms)).primitive_part();
                if (!cand.is_zero() && cand.divides(A) && cand.divides(B))
                    return (cand * cont_gcd).primitive_part();
            }
        }
        last = std::move(lifted);
        have_last = true;
    }
    return std::nullopt;  // caller falls back to the generic path
}

}  // namespace detail

namespace detail {

/// Subresultant-free fallback: primitive PRS in the main variable.
inline MultiPoly gcd_prs(MultiPoly a, MultiPoly b, Var x) {
    auto pp_x = [&](const MultiPoly& p) {
        auto cs = p.coefficients_in(x);
        MultiPoly cont = MultiPoly::zero();
        for (const auto& c : cs) {
            cont = gcd_poly(cont, c);
            if (cont.is_constant() && !cont.is_zero()) return p.primitive_part();
        }
        return p.divide_exact(cont)->primitive_part();
    };
    if (a.degree(x) < b.degree(x)) std::swap(a, b);
    a = pp_x(a);
    b = pp_x(b);
    while (true) {
        if (b.is_zero()) return a.primitive_part();
        int db = b.degree(x);
        if (db == 0) return MultiPoly::one();
        // pseudo-remainder of a by b in x; scaling is irrelevant for the gcd
        MultiPoly lb = b.coefficients_in(x).back();
        MultiPoly r = a;
        while (!r.is_zero() && r.degree(x) >= db) {
            MultiPoly lead = r.coefficients_in(x).back();
            int off = r.degree(x) - db;
            r = r * lb - lead * b * MultiPoly::variable(x, static_cast<unsigned>(off));
        }
        a = std::move(b);
        b = r.is_zero() ? MultiPoly::zero() : pp_x(r);
    }
}

MultiPoly gcd_primitive_parts(const MultiPoly& A, const MultiPoly& B, Var x, unsigned joint_support);

}  // namespace detail

/// Greatest common divisor, primitive with positive leading coefficient.
/// gcd(p, 0) = primitive part of p.
inline MultiPoly gcd_poly(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) return MultiPoly::zero();
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return MultiPoly::one();

    Monomial ma = detail::monomial_gcd(a), mb = detail::monomial_gcd(b);
    std::array<unsigned, kNumVars> mc{};
    for (int i = 0; i < kNumVars; ++i) mc[i] = std::min(ma.exp(i), mb.exp(i));
    Monomial shared = Monomial::from_exponents(mc);
    MultiPoly P = detail::divide_monomial(a, ma).primitive_part();
    MultiPoly Q = detail::divide_monomial(b, mb).primitive_part();

    unsigned joint = P.support() & Q.support();
    MultiPoly g;
    if (joint == 0) {
        g = MultiPoly::one();
    } else if ((joint & (joint - 1)) == 0 && P.support() == joint && Q.support() == joint) {
        Var x = var_from_index(__builtin_ctz(joint));
        auto [cp, zp] = to_zpoly(P, x);
        auto [cq, zq] = to_zpoly(Q, x);
        g = from_zpoly(zpoly_gcd(zp, zq), x);
    } else if (unsigned un = P.support() | Q.support();
               __builtin_popcount(un) == 2 && (joint & (joint - 1)) != 0) {
        // both polynomials live in the same two variables
        Var x = var_from_index(__builtin_ctz(joint));
        Var z = var_from_index(__builtin_ctz(un & ~(1u << var_index(x))));
        auto fast = detail::gcd_bivar_modular(P, Q, x, z);
        g = fast ? *fast : detail::gcd_prs(P, Q, x);
    } else {
        // main variable: smallest joint degree keeps recursion shallow
        Var x = Var::t;
        int best = -1;
        for (int i = 0; i < kNumVars; ++i) {
            if (!(joint & (1u << i))) continue;
            int d = std::min(P.degree(var_from_index(i)), Q.degree(var_from_index(i)));
            if (best == -1 || d < best) {
                best = d;
                x = var_from_index(i);
            }
        }
        auto content_in = [&](const MultiPoly& p) {
            MultiPoly cont = MultiPoly::zero();
            for (const auto& c : p.coefficients_in(x)) {
                cont = gcd_poly(cont, c);
                if (cont.is_constant() && !cont.is_zero()) return MultiPoly::one();
            }
            return cont;
        };
        MultiPoly contP = content_in(P), contQ = content_in(Q);
        MultiPoly ppP = contP.is_constant() ? P : *P.divide_exact(contP);
        MultiPoly ppQ = contQ.is_constant() ? Q : *Q.divide_exact(contQ);
        MultiPoly cg = gcd_poly(contP, contQ);
        MultiPoly pg = detail::gcd_primitive_parts(ppP, ppQ, x, joint);
        g = cg * pg;
    }

    g = (MultiPoly::term(shared, Rational(1)) * g).primitive_part();
    return g;
}

namespace detail {

/// gcd of two polynomials primitive w.r.t. x, by interpolating one other
/// variable at integer points; images are recursive gcds.  Sound because the
/// stabilized candidate must divide both inputs before it is returned.
inline MultiPoly gcd_primitive_parts(const MultiPoly& A, const MultiPoly& B, Var x,
                                     unsigned joint_support) {
    unsigned others = (A.support() | B.support()) & ~(1u << var_index(x));
    if (others == 0) {
        auto [ca, za] = to_zpoly(A, x);
        auto [cb, zb] = to_zpoly(B, x);
        return from_zpoly(zpoly_gcd(za, zb), x);
    }

    MultiPoly lcA = A.coefficients_in(x).back();
    MultiPoly lcB = B.coefficients_in(x).back();
    MultiPoly gamma = gcd_poly(lcA, lcB);
    Var z = Var::t;
    int best = -1;
    for (int i = 0; i < kNumVars; ++i) {
        if (!(others & (1u << i))) continue;
        int d = std::max(A.degree(var_from_index(i)), B.degree(var_from_index(i)));
        if (best == -1 || d < best) {
            best = d;
            z = var_from_index(i);
        }
    }

    int zbound = std::min(A.degree(z), B.degree(z)) + std::max(gamma.degree(z), 0) + 2;
    int min_deg = -1;
    MultiPoly interp = MultiPoly::zero();   // Newton accumulation
    MultiPoly basis = MultiPoly::one();     // prod (z - a_i)
    std::vector<Rational> nodes;
    MultiPoly last;
    bool have_last = false;

    long a_raw = 0;
    int used = 0, tried = 0;
    while (used <= zbound + 2 && tried < 8 * (zbound + 4)) {
        ++tried;
        Rational aval(a_raw);
        a_raw = (a_raw <= 0) ? (-a_raw + 1) : -a_raw;  // 0, 1, -1, 2, -2, ...

        if (lcA.eval_var(z, aval).is_zero() || lcB.eval_var(z, aval).is_zero()) continue;
        MultiPoly gz = gamma.eval_var(z, aval);
        if (gz.is_zero()) continue;

        MultiPoly Ga = gcd_poly(A.eval_var(z, aval), B.eval_var(z, aval));
        int dg = Ga.degree(x);
        if (dg == 0) return MultiPoly::one();
        if (min_deg != -1 && dg > min_deg) continue;  // unlucky point
        if (min_deg == -1 || dg < min_deg) {
            min_deg = dg;
            interp = MultiPoly::zero();
            basis = MultiPoly::one();
            nodes.clear();
            have_last = false;
        }
        // scale image so its x-leading coefficient matches gamma at the point
        MultiPoly lcGa = Ga.coefficients_in(x).back();
        MultiPoly ratio_num = gz, ratio_den = lcGa;
        auto q = ratio_num.divide_exact(ratio_den);
        MultiPoly scaled;
        if (q && q->is_constant()) {
            scaled = Ga * q->constant_value();
        } else {
            // lc mismatch beyond a constant: the image does not extend; skip
            auto q2 = ratio_den.divide_exact(ratio_num);
            if (q2 && q2->is_constant()) {
                scaled = Ga / q2->constant_value();
            } else {
                continue;
            }
        }

        // Newton step
        Rational bval = basis.eval_var(z, aval).constant_value();
        MultiPoly cur = interp.eval_var(z, aval);
        MultiPoly delta = (scaled - cur) * (Rational(1) / bval);
        interp += basis * delta;
        basis *= MultiPoly::variable(z) - MultiPoly::constant(aval);
        nodes.push_back(aval);
        ++used;

        if (have_last && interp == last) {
            MultiPoly cand = interp.primitive_part();
            if (cand.divides(A) && cand.divides(B)) return cand;
        }
        last = interp;
        have_last = true;
    }
    return gcd_prs(A, B, x);
}

}  // namespace detail

/// gcd of the coefficients of p in `var`: smallest coefficients first, and a
/// divisibility test before each further gcd.
inline MultiPoly content_in(const MultiPoly& p, Var var) {
    auto coeffs = p.coefficients_in(var);
    std::vector<const MultiPoly*> order;
    for (const auto& c : coeffs)
        if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const MultiPoly* a, const MultiPoly* b) {
        return a->term_count() < b->term_count();
    });
    MultiPoly g = MultiPoly::zero();
    for (const MultiPoly* c : order) {
        if (!g.is_zero() && g.divides(*c)) continue;
        g = gcd_poly(g, *c);
        if (g.is_constant() && !g.is_zero()) return MultiPoly::one();
    }
    return g;
}

/// p with the repeated factors involving `var` collapsed: p / gcd(p, dp/dvar).
inline MultiPoly squarefree_part(const MultiPoly& p, Var var) {
    assert(!p.is_zero());
    MultiPoly d = p.derivative(var);
    if (d.is_zero()) return p.primitive_part();
    MultiPoly g = gcd_poly(p, d);
    if (g.is_constant()) return p.primitive_part();
    return p.divide_exact(g)->primitive_part();
}

/// Fully squarefree: collapse repeated factors in every variable.
inline MultiPoly squarefree_all(MultiPoly p) {
    for (int i = 0; i < kNumVars; ++i) {
        Var v = var_from_index(i);
        if (p.uses(v)) p = squarefree_part(p, v);
    }
    return p.primitive_part();
}

}  // namespace surfsym

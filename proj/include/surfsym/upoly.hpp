/// Dense univariate polynomials over Z: primitive-PRS resultants, modular
/// gcd, squarefree parts, and exact rational root finding by modular lifting.
#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "surfsym/error.hpp"
#include "surfsym/modp.hpp"
#include "surfsym/monomial.hpp"
#include "surfsym/multipoly.hpp"
#include "surfsym/rational.hpp"

namespace surfsym {

using ZPoly = std::vector<Integer>;  // coefficient i of x^i; no trailing zeros

inline void zpoly_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int zpoly_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Integer zpoly_content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) g = gcd(g, c);
    return g;
}

inline ZPoly zpoly_scale_down(const ZPoly& a, const Integer& d) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / d;
    return r;
}

inline ZPoly zpoly_primitive(const ZPoly& a) {
    if (a.empty()) return a;
    Integer c = zpoly_content(a);
    if (a.back() < 0) c = -c;
    return zpoly_scale_down(a, c);
}

inline ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    zpoly_trim(r);
    return r;
}

inline ZPoly zpoly_derivative(const ZPoly& a) {
    ZPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    zpoly_trim(r);
    return r;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly zpoly_prem(ZPoly a, const ZPoly& b) {
    assert(!b.empty());
    int da = zpoly_deg(a), db = zpoly_deg(b);
    if (da < db) return a;
    const Integer lb = b.back();
    int e = da - db + 1;
    while (!a.empty() && zpoly_deg(a) >= db) {
        Integer lead = a.back();
        int off = zpoly_deg(a) - db;
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[off + i] -= lead * b[i];
        zpoly_trim(a);
        --e;
    }
    if (e > 0 && !a.empty()) {
        Integer f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

inline Rational zpoly_eval(const ZPoly& a, const Rational& x) {
    Rational r(0);
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + Rational(a[i]);
    return r;
}

inline Integer zpoly_eval_int(const ZPoly& a, const Integer& x) {
    Integer r(0);
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

inline bool zpoly_mod_p(const ZPoly& a, std::uint64_t p, PPoly& out) {
    out.clear();
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(mod_of(c, p));
    ppoly_trim(out);
    return true;
}

// -- resultants ----------------------------------------------------------------

/// det of the Sylvester matrix, via a primitive PRS with exact correction
/// factors.  Zero iff the inputs share a factor of positive degree.
inline Rational zpoly_resultant(ZPoly a, ZPoly b) {
    zpoly_trim(a);
    zpoly_trim(b);
    if (a.empty() || b.empty()) fail(errc::undefined_resultant, "undefined resultant");
    int da = zpoly_deg(a), db = zpoly_deg(b);
    if (da == 0 && db == 0) return Rational(1);
    Rational acc(1);
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
        if ((da & 1) && (db & 1)) acc = -acc;
    }
    for (;;) {
        da = zpoly_deg(a);
        db = zpoly_deg(b);
        if (db == 0) {
            // res(a, const c) = c^deg(a)
            Rational c(b.back());
            return acc * MultiPoly::pow_rational(c, static_cast<unsigned>(da));
        }
        ZPoly r = zpoly_prem(a, b);
        if (r.empty()) return Rational(0);
        int dr = zpoly_deg(r);
        Integer cont = zpoly_content(r);
        if (r.back() < 0) cont = -cont;
        ZPoly rp = zpoly_scale_down(r, cont);
        // res(a,b) = (-1)^(da db) lc(b)^(da - dr) cont^db res(b, rp) / lc(b)^((da-db+1) db)
        Rational lb(b.back());
        Rational factor = MultiPoly::pow_rational(lb, static_cast<unsigned>(da - dr));
        factor *= MultiPoly::pow_rational(Rational(cont), static_cast<unsigned>(db));
        factor /= MultiPoly::pow_rational(lb, static_cast<unsigned>((da - db + 1) * db));
        if ((da & 1) && (db & 1)) factor = -factor;
        acc *= factor;
        a = std::move(b);
        b = std::move(rp);
    }
}

// -- gcd -----------------------------------------------------------------------

/// Primitive gcd over Z by modular images + CRT, verified by exact division.
inline ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
    zpoly_trim(a);
    zpoly_trim(b);
    if (a.empty()) return zpoly_primitive(b);
    if (b.empty()) return zpoly_primitive(a);
    a = zpoly_primitive(a);
    b = zpoly_primitive(b);
    if (zpoly_deg(a) == 0 || zpoly_deg(b) == 0) return {Integer(1)};

    Integer gamma = gcd(a.back(), b.back());
    PrimeStream primes;
    int cur_deg = -1;
    ZPoly acc;         // balanced CRT accumulation, scaled to lc = gamma
    Integer modulus = 1;
    ZPoly last_candidate;

    auto divides = [](const ZPoly& d, const ZPoly& p) {
        // exact division test over Z via rational division of contents-free parts
        if (d.empty()) return p.empty();
        ZPoly r = p;
        const Integer& ld = d.back();
        while (!r.empty() && zpoly_deg(r) >= zpoly_deg(d)) {
            Integer q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), ld.get_mpz_t());
            if (rem != 0) return false;
            int off = zpoly_deg(r) - zpoly_deg(d);
            for (int i = 0; i <= zpoly_deg(d); ++i) r[off + i] -= q * d[i];
            zpoly_trim(r);
        }
        return r.empty();
    };

    for (int iter = 0; iter < 512; ++iter) {
        std::uint64_t p = primes.next();
        if (mod_of(a.back(), p) == 0 || mod_of(b.back(), p) == 0) continue;
        PPoly ap, bp;
        zpoly_mod_p(a, p, ap);
        zpoly_mod_p(b, p, bp);
        PPoly gp = ppoly_gcd(ap, bp, p);
        int dg = ppoly_deg(gp);
        if (dg == 0) return {Integer(1)};
        if (cur_deg != -1 && dg > cur_deg) continue;  // unlucky prime
        if (cur_deg == -1 || dg < cur_deg) {
            cur_deg = dg;
            acc.clear();
            modulus = 1;
            last_candidate.clear();
        }
        // scale image so lc = gamma mod p
        std::uint64_t scale = mulmod(mod_of(gamma, p), invmod(gp.back(), p), p);
        ZPoly img(gp.size());
        for (std::size_t i = 0; i < gp.size(); ++i) img[i] = Integer(static_cast<unsigned long>(mulmod(gp[i], scale, p)));
        // CRT combine
        if (modulus == 1) {
            acc = img;
            modulus = p;
        } else {
            Integer pz(static_cast<unsigned long>(p));
            Integer minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
            ZPoly merged(std::max(acc.size(), img.size()), Integer(0));
            for (std::size_t i = 0; i < merged.size(); ++i) {
                Integer ai = i < acc.size() ? acc[i] : Integer(0);
                Integer bi = i < img.size() ? img[i] : Integer(0);
                Integer diff = ((bi - ai) % pz + pz) % pz;
                merged[i] = ai + modulus * ((diff * minv) % pz);
            }
            modulus *= pz;
            acc = std::move(merged);
        }
        // balanced lift
        ZPoly bal(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            Integer c = acc[i] % modulus;
            if (c < 0) c += modulus;
            if (c * 2 > modulus) c -= modulus;
            bal[i] = c;
        }
        zpoly_trim(bal);
        ZPoly candidate = zpoly_primitive(bal);
        if (!last_candidate.empty() && candidate == last_candidate) {
            if (divides(candidate, a) && divides(candidate, b)) return candidate;
        }
        last_candidate = candidate;
    }
    fail(errc::internal, "univariate gcd: modular images did not stabilize");
}

inline ZPoly zpoly_squarefree_part(const ZPoly& a) {
    if (zpoly_deg(a) < 1) return zpoly_primitive(a);
    ZPoly g = zpoly_gcd(a, zpoly_derivative(a));
    if (zpoly_deg(g) == 0) return zpoly_primitive(a);
    // exact quotient a / g
    ZPoly r = a, q(a.size() - g.size() + 1, Integer(0));
    while (!r.empty() && zpoly_deg(r) >= zpoly_deg(g)) {
        Integer f = r.back() / g.back();
        int off = zpoly_deg(r) - zpoly_deg(g);
        q[off] = f;
        for (int i = 0; i <= zpoly_deg(g); ++i) r[off + i] -= f * g[i];
        zpoly_trim(r);
    }
    assert(r.empty());
    zpoly_trim(q);
    return zpoly_primitive(q);
}

// -- rational roots --------------------------------------------------------------

/// Rational reconstruction of x mod m with |num| <= nbound, 0 < den <= dbound.
inline std::optional<Rational> rational_reconstruct(const Integer& x, const Integer& m,
                                                    const Integer& nbound, const Integer& dbound) {
    Integer r0 = m, r1 = ((x % m) + m) % m;
    Integer t0 = 0, t1 = 1;
    while (r1 > nbound) {
        if (r1 == 0) return std::nullopt;
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0) return std::nullopt;
    Integer num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > dbound) return std::nullopt;
    return make_rational(num, den);
}

/// All rational roots of a nonzero integer polynomial (no multiplicities).
///
/// Roots mod a word prime are Hensel-lifted and recognized by rational
/// reconstruction; every candidate is verified by exact substitution, and the
/// lifting bound |a_0|*|a_n| makes the search complete.
inline std::vector<Rational> zpoly_rational_roots(ZPoly p) {
    zpoly_trim(p);
    std::vector<Rational> roots;
    if (zpoly_deg(p) < 1) return roots;
    // strip zero roots
    std::size_t k = 0;
    while (k < p.size() && p[k] == 0) ++k;
    if (k > 0) {
        roots.push_back(Rational(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(k));
    }
    if (zpoly_deg(p) < 1) return roots;
    p = zpoly_squarefree_part(p);
    if (zpoly_deg(p) == 1) {
        roots.push_back(make_rational(-p[0], p[1]));
        return roots;
    }

    Integer nbound = abs(p.front()), dbound = abs(p.back());
    Integer full = 2 * nbound * dbound + 1;

    auto verify = [&](const Rational& cand) {
        // homogeneous evaluation: sum a_i n^i d^(deg-i)
        const Integer& n = cand.get_num();
        const Integer& d = cand.get_den();
        Integer accum = 0, npow = 1;
        std::vector<Integer> dpows(p.size());
        dpows[p.size() - 1] = 1;
        for (std::size_t i = p.size() - 1; i-- > 0;) dpows[i] = dpows[i + 1] * d;
        for (std::size_t i = 0; i < p.size(); ++i) {
            accum += p[i] * npow * dpows[i];
            npow *= n;
        }
        return accum == 0;
    };

    SplitMix64 rng(0x5eedULL);
    PrimeStream primes;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint64_t pr = primes.next();
        if (mod_of(p.back(), pr) == 0) continue;
        PPoly fp;
        zpoly_mod_p(p, pr, fp);
        if (ppoly_deg(fp) != zpoly_deg(p)) continue;
        // need squarefree image so every root is simple and liftable
        PPoly der = ppoly_derivative(fp, pr);
        if (ppoly_deg(ppoly_gcd(fp, der, pr)) != 0) continue;

        std::vector<std::uint64_t> rts = ppoly_roots(fp, pr, rng);
        ZPoly pder = zpoly_derivative(p);
        for (std::uint64_t r0 : rts) {
            Integer r(static_cast<unsigned long>(r0));
            Integer modulus(static_cast<unsigned long>(pr));
            bool banked = false;
            while (!banked) {
                // try to recognize at the current precision
                auto cand = rational_reconstruct(r, modulus, nbound, dbound);
                if (cand && verify(*cand)) {
                    if (std::find(roots.begin(), roots.end(), *cand) == roots.end())
                        roots.push_back(*cand);
                    banked = true;
                    break;
                }
                if (modulus > full) break;  // complete: not a rational root
                // quadratic Hensel step: r <- r - f(r)/f'(r) mod modulus^2
                modulus *= modulus;
                Integer fr = zpoly_eval_int(p, r) % modulus;
                Integer dfr = zpoly_eval_int(pder, r) % modulus;
                Integer inv;
                if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), modulus.get_mpz_t()) == 0) break;
                r = ((r - fr * inv) % modulus + modulus) % modulus;
            }
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    fail(errc::internal, "rational roots: no usable prime found");
}

/// Quotient when the division is exact; nullopt otherwise.
inline std::optional<ZPoly> zpoly_try_divexact(const ZPoly& num, const ZPoly& den) {
    assert(!den.empty());
    if (num.empty()) return ZPoly{};
    if (num.size() < den.size()) return std::nullopt;
    ZPoly r = num, q(num.size() - den.size() + 1, Integer(0));
    while (!r.empty() && zpoly_deg(r) >= zpoly_deg(den)) {
        Integer f, rem;
        mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), den.back().get_mpz_t());
        if (rem != 0) return std::nullopt;
        int off = zpoly_deg(r) - zpoly_deg(den);
        q[off] = f;
        for (int i = 0; i <= zpoly_deg(den); ++i) r[off + i] -= f * den[i];
        zpoly_trim(r);
    }
    if (!r.empty()) return std::nullopt;
    zpoly_trim(q);
    return q;
}

/// Exact quotient; caller guarantees divisibility.
inline ZPoly zpoly_divexact(const ZPoly& num, const ZPoly& den) {
    assert(!den.empty());
    if (num.empty()) return {};
    ZPoly r = num, q(num.size() - den.size() + 1, Integer(0));
    while (!r.empty() && zpoly_deg(r) >= zpoly_deg(den)) {
        Integer f = r.back() / den.back();
        int off = zpoly_deg(r) - zpoly_deg(den);
        q[off] = f;
        for (int i = 0; i <= zpoly_deg(den); ++i) r[off + i] -= f * den[i];
        zpoly_trim(r);
    }
    assert(r.empty());
    zpoly_trim(q);
    return q;
}

inline ZPoly zpoly_pow(const ZPoly& a, unsigned e) {
    ZPoly r{Integer(1)}, base = a;
    while (e) {
        if (e & 1) r = zpoly_mul(r, base);
        e >>= 1;
        if (e) base = zpoly_mul(base, base);
    }
    return r;
}

// -- bridging to MultiPoly --------------------------------------------------------

/// View a univariate MultiPoly as (content, dense integer poly).
inline std::pair<Rational, ZPoly> to_zpoly(const MultiPoly& p, Var v) {
    assert((p.support() & ~(1u << var_index(v))) == 0);
    if (p.is_zero()) return {Rational(0), {}};
    Rational c = p.content();
    MultiPoly pp = p / c;
    ZPoly z(static_cast<std::size_t>(p.degree(v)) + 1, Integer(0));
    for (const auto& t : pp.terms()) {
        assert(is_integer(t.c));
        z[t.m.exp(v)] = t.c.get_num();
    }
    return {c, z};
}

inline MultiPoly from_zpoly(const ZPoly& z, Var v) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0) terms.push_back({Monomial::var(v, static_cast<unsigned>(i)), Rational(z[i])});
    return MultiPoly::from_terms(std::move(terms));
}

/// Spec op: all rational roots of a univariate polynomial over Q.
inline std::vector<Rational> rational_roots_univar(const MultiPoly& p) {
    if (p.is_zero()) fail(errc::internal, "rational_roots_univar: zero polynomial");
    unsigned sup = p.support();
    if (sup == 0) return {};
    assert((sup & (sup - 1)) == 0);  // exactly one variable
    Var v = var_from_index(__builtin_ctz(sup));
    auto [c, z] = to_zpoly(p, v);
    return zpoly_rational_roots(z);
}

}  // namespace surfsym

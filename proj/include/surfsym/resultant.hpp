/// Resultants of multivariate polynomials with respect to one variable.
///
/// Univariate pairs go through an exact primitive-PRS; everything else is
/// dense Newton interpolation over the remaining variables, recursing down to
/// the univariate case.  A Bareiss elimination of the literal Sylvester
/// matrix is kept as an independent route for cross-checking.
#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "surfsym/gcd.hpp"
#include "surfsym/multipoly.hpp"
#include "surfsym/upoly.hpp"

namespace surfsym {

namespace detail {

/// Exact resultant of polynomials whose only variable (if any) is `var`.
inline MultiPoly resultant_univar(const MultiPoly& p, const MultiPoly& q, Var var) {
    int dp = std::max(p.degree(var), 0), dq = std::max(q.degree(var), 0);
    if (dp == 0 && dq == 0) return MultiPoly::one();
    if (dp == 0) return MultiPoly::constant(MultiPoly::pow_rational(p.constant_value(), dq));
    if (dq == 0) return MultiPoly::constant(MultiPoly::pow_rational(q.constant_value(), dp));
    auto [cp, zp] = to_zpoly(p, var);
    auto [cq, zq] = to_zpoly(q, var);
    Rational r = zpoly_resultant(zp, zq);
    r *= MultiPoly::pow_rational(cp, static_cast<unsigned>(dq));
    r *= MultiPoly::pow_rational(cq, static_cast<unsigned>(dp));
    return MultiPoly::constant(r);
}

/// Pseudo-remainder lc_var(b)^(da-db+1) * a mod b over the coefficient ring.
inline MultiPoly prem_var(MultiPoly a, const MultiPoly& b, Var var) {
    int da = a.degree(var), db = b.degree(var);
    if (da < db) return a;
    MultiPoly lb = b.coefficients_in(var).back();
    int e = da - db + 1;
    while (!a.is_zero() && a.degree(var) >= db) {
        MultiPoly lead = a.coefficients_in(var).back();
        int off = a.degree(var) - db;
        a = a * lb - lead * b * MultiPoly::variable(var, static_cast<unsigned>(off));
        --e;
    }
    if (e > 0 && !a.is_zero()) {
        MultiPoly f = MultiPoly::one();
        for (int i = 0; i < e; ++i) f = f * lb;
        a = a * f;
    }
    return a;
}

/// Exact resultant by the subresultant PRS over the (possibly multivariate)
/// coefficient ring; every division is exact and no gcds are taken.
inline MultiPoly resultant_subres_prs(MultiPoly a, MultiPoly b, Var var) {
    int da = a.degree(var), db = b.degree(var);
    int sign = 1;
    if (da < db) {
        if ((da & 1) && (db & 1)) sign = -sign;
        std::swap(a, b);
    }
    MultiPoly g = MultiPoly::one(), h = MultiPoly::one();
    for (;;) {
        da = a.degree(var);
        if (b.is_zero()) return MultiPoly::zero();
        db = b.degree(var);
        if (db == 0) {
            MultiPoly base = b;
            MultiPoly num = base.pow(static_cast<unsigned>(da));
            if (da <= 1) return sign < 0 ? -num : num;
            auto q = num.divide_exact(h.pow(static_cast<unsigned>(da - 1)));
            assert(q.has_value());
            return sign < 0 ? -*q : *q;
        }
        int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        MultiPoly r = prem_var(a, b, var);
        a = std::move(b);
        if (r.is_zero()) {
            b = MultiPoly::zero();
            continue;
        }
        MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
        auto q = r.divide_exact(divisor);
        assert(q.has_value());
        b = std::move(*q);
        g = a.coefficients_in(var).back();
        if (delta >= 1) {
            MultiPoly num = g.pow(static_cast<unsigned>(delta));
            if (delta == 1) {
                h = std::move(num);
            } else {
                auto hq = num.divide_exact(h.pow(static_cast<unsigned>(delta - 1)));
                assert(hq.has_value());
                h = std::move(*hq);
            }
        }
    }
}

/// Dense subresultant PRS for the grid bottom: polynomials in `var` whose
/// coefficients are univariate integer polynomials in `z`.
inline MultiPoly resultant_dense_bivar(const MultiPoly& pin, const MultiPoly& qin, Var var,
                                       Var z) {
    using BPoly = std::vector<ZPoly>;  // index = exponent of var
    auto convert = [&](const MultiPoly& f, Rational& content) -> BPoly {
        content = f.content();
        MultiPoly pp = f / content;
        BPoly out(static_cast<std::size_t>(f.degree(var)) + 1);
        for (const auto& t : pp.terms()) {
            ZPoly& c = out[t.m.exp(var)];
            std::size_t zd = t.m.exp(z);
            if (c.size() <= zd) c.resize(zd + 1, Integer(0));
            c[zd] = t.c.get_num();
        }
        return out;
    };
    auto bdeg = [](const BPoly& f) {
        int d = -1;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!f[i].empty()) d = static_cast<int>(i);
        return d;
    };
    auto btrim = [&](BPoly& f) { f.resize(static_cast<std::size_t>(std::max(bdeg(f), -1)) + 1); };
    auto scale = [](BPoly& f, const ZPoly& c) {
        for (auto& coef : f) coef = zpoly_mul(coef, c);
    };
    auto prem = [&](BPoly a, const BPoly& b) {
        int da = bdeg(a), db = bdeg(b);
        if (da < db) return a;
        const ZPoly lb = b.back();
        int e = da - db + 1;
        while (bdeg(a) >= db) {
            ZPoly lead = a[static_cast<std::size_t>(bdeg(a))];
            int off = bdeg(a) - db;
            scale(a, lb);
            for (int i = 0; i <= db; ++i) {
                ZPoly sub = zpoly_mul(lead, b[static_cast<std::size_t>(i)]);
                ZPoly& dst = a[static_cast<std::size_t>(off + i)];
                if (dst.size() < sub.size()) dst.resize(sub.size(), Integer(0));
                for (std::size_t k = 0; k < sub.size(); ++k) dst[k] -= sub[k];
                zpoly_trim(dst);
            }
            btrim(a);
            --e;
            if (bdeg(a) < 0) break;
        }
        if (e > 0 && bdeg(a) >= 0) {
            ZPoly f = zpoly_pow(lb, static_cast<unsigned>(e));
            scale(a, f);
        }
        return a;
    };

    Rational cp, cq;
    BPoly a = convert(pin, cp), b = convert(qin, cq);
    int da0 = bdeg(a), db0 = bdeg(b);
    Rational outer = MultiPoly::pow_rational(cp, static_cast<unsigned>(db0)) *
                     MultiPoly::pow_rational(cq, static_cast<unsigned>(da0));
    int sign = 1;
    if (da0 < db0) {
        if ((da0 & 1) && (db0 & 1)) sign = -sign;
        std::swap(a, b);
    }
    ZPoly g{Integer(1)}, h{Integer(1)};
    for (;;) {
        int da = bdeg(a);
        if (bdeg(b) < 0) return MultiPoly::zero();
        int db = bdeg(b);
        if (db == 0) {
            ZPoly num = zpoly_pow(b[0], static_cast<unsigned>(da));
            ZPoly res = da <= 1 ? num : zpoly_divexact(num, zpoly_pow(h, static_cast<unsigned>(da - 1)));
            MultiPoly out = from_zpoly(res, z) * outer;
            return sign < 0 ? -out : out;
        }
        int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        BPoly r = prem(a, b);
        a = std::move(b);
        if (bdeg(r) < 0) {
            b = BPoly{};
            continue;
        }
        ZPoly divisor = zpoly_mul(g, zpoly_pow(h, static_cast<unsigned>(delta)));
        for (auto& coef : r) coef = coef.empty() ? coef : zpoly_divexact(coef, divisor);
        btrim(r);
        b = std::move(r);
        g = a[static_cast<std::size_t>(bdeg(a))];
        if (delta >= 1) {
            ZPoly num = zpoly_pow(g, static_cast<unsigned>(delta));
            h = delta == 1 ? num : zpoly_divexact(num, zpoly_pow(h, static_cast<unsigned>(delta - 1)));
        }
    }
}

struct InterpPlan {
    std::array<int, kNumVars> degree_target{};  // per-variable interpolation degree
};

inline MultiPoly resultant_interp(const MultiPoly& p, const MultiPoly& q, Var var,
                                  const InterpPlan& plan) {
    unsigned others = (p.support() | q.support()) & ~(1u << var_index(var));
    if (others == 0) return resultant_univar(p, q, var);
    if ((others & (others - 1)) == 0)
        return resultant_dense_bivar(p, q, var, var_from_index(__builtin_ctz(others)));

    // interpolate the variable with the smallest degree target
    Var z = Var::t;
    int best = -1;
    for (int i = 0; i < kNumVars; ++i) {
        if (!(others & (1u << i))) continue;
        if (best == -1 || plan.degree_target[i] < best) {
            best = plan.degree_target[i];
            z = var_from_index(i);
        }
    }
    int dz = plan.degree_target[var_index(z)];

    MultiPoly lcp = p.coefficients_in(var).back();
    MultiPoly lcq = q.coefficients_in(var).back();

    MultiPoly interp = MultiPoly::zero();
    MultiPoly basis = MultiPoly::one();
    int used = 0;
    long a_raw = 0;
    while (used <= dz) {
        Rational aval(a_raw);
        a_raw = (a_raw <= 0) ? (-a_raw + 1) : -a_raw;
        // the specialized pair must keep its degrees in `var`
        if (lcp.eval_var(z, aval).is_zero() || lcq.eval_var(z, aval).is_zero()) continue;
        MultiPoly value = resultant_interp(p.eval_var(z, aval), q.eval_var(z, aval), var, plan);
        Rational bval = basis.eval_var(z, aval).constant_value();
        MultiPoly cur = interp.eval_var(z, aval);
        interp += basis * ((value - cur) * (Rational(1) / bval));
        basis *= MultiPoly::variable(z) - MultiPoly::constant(aval);
        ++used;
    }
    return interp;
}

inline InterpPlan full_bezout_plan(const MultiPoly& p, const MultiPoly& q, Var var) {
    InterpPlan plan;
    int dp = p.degree(var), dq = q.degree(var);
    for (int i = 0; i < kNumVars; ++i) {
        Var z = var_from_index(i);
        if (z == var) continue;
        int zp = std::max(p.degree(z), 0), zq = std::max(q.degree(z), 0);
        plan.degree_target[i] = zp * dq + zq * dp;
    }
    return plan;
}

}  // namespace detail

/// Determinant of the Sylvester matrix of p, q with respect to `var`.
/// Convention: a var-free operand is raised to the other operand's degree;
/// a zero operand (with the other nonzero) gives the zero polynomial.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, Var var) {
    if (p.is_zero() && q.is_zero()) fail(errc::undefined_resultant, "undefined resultant");
    if (p.is_zero() || q.is_zero()) return MultiPoly::zero();
    int dp = std::max(p.degree(var), 0), dq = std::max(q.degree(var), 0);
    if (dp == 0) return p.pow(static_cast<unsigned>(dq));
    if (dq == 0) return q.pow(static_cast<unsigned>(dp));
    unsigned others = (p.support() | q.support()) & ~(1u << var_index(var));
    if (others == 0) return detail::resultant_univar(p, q, var);
    return detail::resultant_interp(p, q, var, detail::full_bezout_plan(p, q, var));
}

/// Bareiss fraction-free elimination of the literal Sylvester matrix.
/// Slow but independent; the tests check the fast route against it.
inline MultiPoly resultant_bareiss(const MultiPoly& p, const MultiPoly& q, Var var) {
    if (p.is_zero() && q.is_zero()) fail(errc::undefined_resultant, "undefined resultant");
    if (p.is_zero() || q.is_zero()) return MultiPoly::zero();
    int dp = std::max(p.degree(var), 0), dq = std::max(q.degree(var), 0);
    if (dp == 0) return p.pow(static_cast<unsigned>(dq));
    if (dq == 0) return q.pow(static_cast<unsigned>(dp));

    int n = dp + dq;
    auto cp = p.coefficients_in(var);
    auto cq = q.coefficients_in(var);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly::zero()));
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k) m[r][r + dp - k] = cp[k];
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k) m[dq + r][r + dq - k] = cq[k];

    MultiPoly prev = MultiPoly::one();
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row == -1) return MultiPoly::zero();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto div = num.divide_exact(prev);
                assert(div.has_value());
                m[i][j] = *div;
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

namespace detail {

/// Reduce mod p with every variable assigned except `keep`; false when a
/// coefficient denominator vanishes mod p.
inline bool multipoly_mod_p_slice(const MultiPoly& poly,
                                  const std::array<std::optional<std::uint64_t>, kNumVars>& vals,
                                  Var keep, std::uint64_t p, PPoly& out) {
    out.assign(static_cast<std::size_t>(std::max(poly.degree(keep), 0)) + 1, 0);
    for (const auto& t : poly.terms()) {
        std::uint64_t c;
        if (!mod_of(t.c, p, c)) return false;
        for (int i = 0; i < kNumVars; ++i) {
            Var zi = var_from_index(i);
            unsigned e = t.m.exp(i);
            if (zi == keep || e == 0) continue;
            assert(vals[i].has_value());
            c = mulmod(c, powmod(*vals[i], e, p), p);
        }
        std::size_t slot = t.m.exp(keep);
        out[slot] = (out[slot] + c) % p;
    }
    ppoly_trim(out);
    return true;
}

/// res mod p of univariate images, by the Euclidean recurrence.
inline std::uint64_t ppoly_resultant(PPoly a, PPoly b, std::uint64_t p) {
    ppoly_trim(a);
    ppoly_trim(b);
    if (a.empty() || b.empty()) return 0;
    std::uint64_t res = 1;
    if (ppoly_deg(a) == 0 && ppoly_deg(b) == 0) return 1;
    if (ppoly_deg(a) < ppoly_deg(b)) {
        if ((ppoly_deg(a) & 1) && (ppoly_deg(b) & 1)) res = p - 1;
        std::swap(a, b);
    }
    for (;;) {
        int da = ppoly_deg(a), db = ppoly_deg(b);
        if (db == 0) return mulmod(res, powmod(b[0], da, p), p);
        PPoly r = ppoly_rem(a, b, p);
        if (r.empty()) return 0;
        int dr = ppoly_deg(r);
        std::uint64_t f = powmod(b.back(), static_cast<std::uint64_t>(da - dr), p);
        if ((da & 1) && (db & 1)) f = p - f;
        res = mulmod(res, f, p);
        a = std::move(b);
        b = std::move(r);
    }
}


// One multi-dimensional Newton interpolation pass of Res mod p.  The output
// tensor is indexed row-major by the exponents of the retained variables with
// extents target[i]+1.  Nodes are chosen per line, skipping specializations
// that drop the degree in the eliminated variable; a pass fails when a line
// cannot collect enough valid nodes (unlucky prime or targets too low).

/// Dense mod-p image of a polynomial, nested by `order` then `var`.
struct ModPoly {
    std::vector<int> dims;  // extents per level; last = var axis
    std::vector<std::uint64_t> flat;

    std::size_t stride() const {
        std::size_t s = 1;
        for (std::size_t i = 1; i < dims.size(); ++i) s *= static_cast<std::size_t>(dims[i]);
        return s;
    }
};

inline bool modpoly_from(const MultiPoly& p, const std::vector<Var>& order, Var var,
                         std::uint64_t prime, ModPoly& out) {
    out.dims.assign(order.size() + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) out.dims[i] = p.degree(order[i]) + 1;
    out.dims.back() = std::max(p.degree(var), 0) + 1;
    for (auto& d : out.dims) d = std::max(d, 1);
    std::size_t total = 1;
    for (int d : out.dims) total *= static_cast<std::size_t>(d);
    out.flat.assign(total, 0);
    for (const auto& t : p.terms()) {
        std::uint64_t c;
        if (!mod_of(t.c, prime, c)) return false;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            idx = idx * static_cast<std::size_t>(out.dims[i]) + t.m.exp(order[i]);
        idx = idx * static_cast<std::size_t>(out.dims.back()) + t.m.exp(var);
        out.flat[idx] = (out.flat[idx] + c) % prime;
    }
    return true;
}

/// Evaluate the outermost axis at `a` by Horner over slabs.
inline ModPoly modpoly_eval_first(const ModPoly& p, std::uint64_t a, std::uint64_t prime) {
    ModPoly out;
    out.dims.assign(p.dims.begin() + 1, p.dims.end());
    std::size_t slab = p.flat.size() / static_cast<std::size_t>(p.dims[0]);
    out.flat.assign(slab, 0);
    for (int i = p.dims[0] - 1; i >= 0; --i) {
        const std::uint64_t* src = p.flat.data() + static_cast<std::size_t>(i) * slab;
        for (std::size_t j = 0; j < slab; ++j)
            out.flat[j] = (mulmod(out.flat[j], a, prime) + src[j]) % prime;
    }
    return out;
}

inline bool modular_resultant_pass(const ModPoly& g1, const ModPoly& g2, std::size_t level,
                                   const std::vector<int>& targets, int dv1, int dv2,
                                   std::uint64_t prime, std::vector<std::uint64_t>& out,
                                   std::size_t out_size) {
    if (level == targets.size()) {
        // bottom: univariate images in the eliminated variable
        PPoly a(g1.flat.begin(), g1.flat.end());
        PPoly b(g2.flat.begin(), g2.flat.end());
        ppoly_trim(a);
        ppoly_trim(b);
        if (ppoly_deg(a) != dv1 || ppoly_deg(b) != dv2) return false;
        out.assign(out_size, 0);
        out[0] = ppoly_resultant(a, b, prime);
        return true;
    }
    int need = targets[level] + 1;
    std::size_t sub_size = out_size / static_cast<std::size_t>(need);
    std::vector<std::uint64_t> interp(out_size, 0);   // coeff-major over this axis
    PPoly basis{1};
    std::vector<std::uint64_t> nodes;
    std::vector<std::uint64_t> sub, cur(sub_size), diff(sub_size);
    std::uint64_t node = 0;
    int got = 0, attempts = 0;
    while (got < need && attempts < 4 * need + 64) {
        ++attempts;
        std::uint64_t a = node++;
        ModPoly s1 = modpoly_eval_first(g1, a, prime);
        ModPoly s2 = modpoly_eval_first(g2, a, prime);
        if (!modular_resultant_pass(s1, s2, level + 1, targets, dv1, dv2, prime, sub, sub_size))
            continue;
        // Horner-evaluate current interpolation at a, elementwise
        std::fill(cur.begin(), cur.end(), 0);
        for (int k = got; k >= 0; --k) {
            const std::uint64_t* src = interp.data() + static_cast<std::size_t>(k) * sub_size;
            for (std::size_t j = 0; j < sub_size; ++j)
                cur[j] = (mulmod(cur[j], a, prime) + src[j]) % prime;
        }
        // divided update: interp += basis * (sub - cur) / basis(a)
        std::uint64_t bval = 0;
        for (std::size_t k = basis.size(); k-- > 0;) bval = (mulmod(bval, a, prime) + basis[k]) % prime;
        std::uint64_t binv = invmod(bval, prime);
        for (std::size_t j = 0; j < sub_size; ++j)
            diff[j] = mulmod((sub[j] + prime - cur[j]) % prime, binv, prime);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k] == 0) continue;
            std::uint64_t* dst = interp.data() + k * sub_size;
            for (std::size_t j = 0; j < sub_size; ++j)
                dst[j] = (dst[j] + mulmod(basis[k], diff[j], prime)) % prime;
        }
        // basis *= (x - a)
        PPoly nb(basis.size() + 1, 0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            nb[k + 1] = (nb[k + 1] + basis[k]) % prime;
            nb[k] = (nb[k] + mulmod(basis[k], prime - (a % prime), prime)) % prime;
        }
        basis = std::move(nb);
        nodes.push_back(a);
        ++got;
    }
    if (got < need) return false;
    out = std::move(interp);
    return true;
}

}  // namespace detail

/// Resultant tuned for the invariant-matching systems: the true degree of the
/// resultant in each retained variable is discovered from mod-p slices, the
/// whole resultant is rebuilt modulo word-size primes and assembled by CRT,
/// and the candidate is accepted only after it reproduces independent random
/// slices both mod p and over Q; on mismatch the degrees grow toward the full
/// Bezout bound, falling back to the exact interpolation engine.
inline MultiPoly resultant_tuned(const MultiPoly& p, const MultiPoly& q, Var var,
                                 RandomStream& rng) {
    if (p.is_zero() && q.is_zero()) fail(errc::undefined_resultant, "undefined resultant");
    if (p.is_zero() || q.is_zero()) return MultiPoly::zero();
    int dp = std::max(p.degree(var), 0), dq = std::max(q.degree(var), 0);
    if (dp == 0) return p.pow(static_cast<unsigned>(dq));
    if (dq == 0) return q.pow(static_cast<unsigned>(dp));
    unsigned others = (p.support() | q.support()) & ~(1u << var_index(var));
    if (others == 0) return detail::resultant_univar(p, q, var);

    detail::InterpPlan full = detail::full_bezout_plan(p, q, var);
    const std::uint64_t prime = 2147483629ull;  // below 2^31

    // degree of Res in variable z, from one random mod-p slice
    auto discover = [&](Var z, int bound) -> int {
        for (int attempt = 0; attempt < 10; ++attempt) {
            std::array<std::optional<std::uint64_t>, kNumVars> vals{};
            for (int i = 0; i < kNumVars; ++i) {
                Var zi = var_from_index(i);
                if (zi == var || zi == z) continue;
                vals[i] = rng.below(prime);
            }
            std::vector<std::uint64_t> xs, ys;
            std::uint64_t a = 0;
            bool bad = false;
            while (static_cast<int>(xs.size()) <= bound && a < prime) {
                vals[var_index(z)] = a++;
                PPoly pp, qq;
                if (!detail::multipoly_mod_p_slice(p, vals, var, prime, pp) ||
                    !detail::multipoly_mod_p_slice(q, vals, var, prime, qq)) {
                    bad = true;
                    break;
                }
                if (ppoly_deg(pp) != dp || ppoly_deg(qq) != dq) continue;
                xs.push_back(a - 1);
                ys.push_back(detail::ppoly_resultant(pp, qq, prime));
            }
            if (bad || static_cast<int>(xs.size()) <= bound) continue;
            PPoly interp = ppoly_newton_interpolate(xs, ys, prime);
            return ppoly_deg(interp);
        }
        return -1;
    };

    detail::InterpPlan plan;
    for (int i = 0; i < kNumVars; ++i) {
        if (!(others & (1u << i))) continue;
        int d = discover(var_from_index(i), full.degree_target[i]);
        plan.degree_target[i] = d < 0 ? full.degree_target[i] : std::max(d, 0);
    }

    // integer-primitive inputs; the rational contents scale out exactly
    Rational cp = p.content(), cq = q.content();
    MultiPoly P = p / cp, Q = q / cq;
    Rational outer = MultiPoly::pow_rational(cp, static_cast<unsigned>(dq)) *
                     MultiPoly::pow_rational(cq, static_cast<unsigned>(dp));
    std::vector<Var> order;
    for (int i = 0; i < kNumVars; ++i)
        if (others & (1u << i)) order.push_back(var_from_index(i));

    auto verify = [&](const MultiPoly& eta) {
        // mod-p checks at uniformly random points, then small exact checks
        std::uint64_t vprime = PrimeStream(2000000000ull).next();
        for (int check = 0; check < 12; ++check) {
            std::array<std::optional<std::uint64_t>, kNumVars> vals{};
            for (int i = 0; i < kNumVars; ++i) {
                if (var_from_index(i) == var) continue;
                vals[i] = rng.below(vprime);
            }
            PPoly pp, qq;
            if (!detail::multipoly_mod_p_slice(p, vals, var, vprime, pp) ||
                !detail::multipoly_mod_p_slice(q, vals, var, vprime, qq))
                continue;
            if (ppoly_deg(pp) != dp || ppoly_deg(qq) != dq) continue;
            std::uint64_t expect = detail::ppoly_resultant(pp, qq, vprime);
            PPoly got;
            if (!detail::multipoly_mod_p_slice(eta, vals, var, vprime, got)) continue;
            std::uint64_t got_c = got.empty() ? 0 : got[0];
            if (ppoly_deg(got) > 0 || got_c != expect) return false;
        }
        for (int check = 0; check < 2; ++check) {
            std::array<std::optional<Rational>, kNumVars> vals{};
            for (int i = 0; i < kNumVars; ++i) {
                if (var_from_index(i) == var || !(others & (1u << i))) continue;
                vals[i] = Rational(rng.int_in(20));
            }
            MultiPoly ps = p.eval_partial(vals), qs = q.eval_partial(vals);
            if (ps.degree(var) != dp || qs.degree(var) != dq) continue;
            if (eta.eval_partial(vals) != detail::resultant_univar(ps, qs, var)) return false;
        }
        return true;
    };

    for (;;) {
        std::vector<int> targets;
        std::size_t flat = 1;
        for (Var z : order) {
            targets.push_back(plan.degree_target[var_index(z)]);
            flat *= static_cast<std::size_t>(targets.back() + 1);
        }

        // CRT over word-size primes until the balanced lift stabilizes
        std::vector<Integer> acc, lifted, prev;
        Integer modulus = 1;
        PrimeStream crt_primes;
        bool stable = false;
        for (int pi = 0; pi < 2048 && !stable; ++pi) {
            std::uint64_t pr = crt_primes.next();
            detail::ModPoly g1, g2;
            if (!modpoly_from(P, order, var, pr, g1) || !modpoly_from(Q, order, var, pr, g2))
                continue;
            std::vector<std::uint64_t> tensor;
            if (!detail::modular_resultant_pass(g1, g2, 0, targets, dp, dq, pr, tensor, flat))
                continue;
            Integer pz(static_cast<unsigned long>(pr));
            if (modulus == 1) {
                acc.assign(flat, Integer(0));
                for (std::size_t j = 0; j < flat; ++j)
                    acc[j] = Integer(static_cast<unsigned long>(tensor[j]));
                modulus = pz;
            } else {
                Integer minv;
                mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
                for (std::size_t j = 0; j < flat; ++j) {
                    Integer cur = acc[j] % pz;
                    Integer want(static_cast<unsigned long>(tensor[j]));
                    Integer diff = ((want - cur) % pz + pz) % pz;
                    acc[j] += modulus * ((diff * minv) % pz);
                }
                modulus *= pz;
            }
            lifted.assign(flat, Integer(0));
            for (std::size_t j = 0; j < flat; ++j) {
                Integer c = acc[j] % modulus;
                if (c < 0) c += modulus;
                if (c * 2 > modulus) c -= modulus;
                lifted[j] = c;
            }
            if (!prev.empty() && lifted == prev) stable = true;
            prev = lifted;
        }

        if (stable) {
            std::vector<Term> terms;
            for (std::size_t j = 0; j < flat; ++j) {
                if (lifted[j] == 0) continue;
                std::size_t rem = j;
                std::array<unsigned, kNumVars> e{};
                for (std::size_t k = order.size(); k-- > 0;) {
                    e[var_index(order[k])] = static_cast<unsigned>(rem % static_cast<std::size_t>(targets[k] + 1));
                    rem /= static_cast<std::size_t>(targets[k] + 1);
                }
                terms.push_back({Monomial::from_exponents(e), Rational(lifted[j]) * outer});
            }
            MultiPoly eta = MultiPoly::from_terms(std::move(terms));
            if (verify(eta)) return eta;
        }

        bool grew = false;
        for (int i = 0; i < kNumVars; ++i) {
            if (!(others & (1u << i))) continue;
            if (plan.degree_target[i] < full.degree_target[i]) {
                plan.degree_target[i] =
                    std::min(full.degree_target[i], 2 * plan.degree_target[i] + 4);
                grew = true;
            }
        }
        if (!grew) return detail::resultant_interp(p, q, var, full);
    }
}

}  // namespace surfsym

/// Arithmetic in F_p and F_p[x] for word-sized primes; used by the modular
/// gcd and the rational root finder.
#pragma once

#include <cstdint>
#include <vector>

#include "surfsym/rational.hpp"

namespace surfsym {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) d >>= 1, ++r;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Deterministic sequence of ~31-bit primes, largest first.
class PrimeStream {
  public:
    explicit PrimeStream(std::uint64_t start = (1ull << 31) - 1) : next_(start) {}

    std::uint64_t next() {
        while (!is_prime_u64(next_)) --next_;
        return next_--;
    }

  private:
    std::uint64_t next_;
};

inline std::uint64_t mod_of(const Integer& z, std::uint64_t p) {
    Integer r;
    mpz_mod_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

/// Reduce a rational mod p; fails (returns false) if the denominator is 0 mod p.
inline bool mod_of(const Rational& q, std::uint64_t p, std::uint64_t& out) {
    std::uint64_t den = mod_of(q.get_den(), p);
    if (den == 0) return false;
    std::uint64_t num = mod_of(q.get_num(), p);
    out = mulmod(num, invmod(den, p), p);
    return true;
}

// -- dense polynomials over F_p ----------------------------------------------

using PPoly = std::vector<std::uint64_t>;  // coefficient i of x^i; no trailing zeros

inline void ppoly_trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int ppoly_deg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    ppoly_trim(r);
    return r;
}

inline PPoly ppoly_rem(PPoly a, const PPoly& b, std::uint64_t p) {
    std::uint64_t inv_lead = invmod(b.back(), p);
    while (ppoly_deg(a) >= ppoly_deg(b)) {
        std::uint64_t f = mulmod(a.back(), inv_lead, p);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[off + i] = (a[off + i] + p - mulmod(f, b[i], p)) % p;
        }
        ppoly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, std::uint64_t p) {
    ppoly_trim(a);
    ppoly_trim(b);
    while (!b.empty()) {
        PPoly r = ppoly_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

inline PPoly ppoly_derivative(const PPoly& a, std::uint64_t p) {
    PPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
    ppoly_trim(r);
    return r;
}

/// x^e mod (m, p) by repeated squaring.
inline PPoly ppoly_xpow_mod(std::uint64_t e, const PPoly& m, std::uint64_t p) {
    PPoly r{1}, base{0, 1};
    base = ppoly_rem(base, m, p);
    while (e) {
        if (e & 1) r = ppoly_rem(ppoly_mul(r, base, p), m, p);
        base = ppoly_rem(ppoly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

/// All roots in F_p of a squarefree product of linear factors, by
/// Cantor-Zassenhaus splitting.
inline void ppoly_linear_roots(const PPoly& f, std::uint64_t p, SplitMix64& rng,
                               std::vector<std::uint64_t>& out) {
    int d = ppoly_deg(f);
    if (d <= 0) return;
    if (d == 1) {
        // f = c1 x + c0 -> root -c0/c1
        out.push_back(mulmod(p - (f[0] % p), invmod(f[1], p), p));
        return;
    }
    for (;;) {
        std::uint64_t a = rng.next() % p;
        // gcd(f, (x+a)^((p-1)/2) - 1) splits the roots into two halves.
        PPoly xa{a, 1};
        PPoly pw{1};
        {
            std::uint64_t e = (p - 1) / 2;
            PPoly base = ppoly_rem(xa, f, p);
            while (e) {
                if (e & 1) pw = ppoly_rem(ppoly_mul(pw, base, p), f, p);
                base = ppoly_rem(ppoly_mul(base, base, p), f, p);
                e >>= 1;
            }
        }
        if (pw.empty())
            pw = PPoly{p - 1};
        else {
            pw[0] = (pw[0] + p - 1) % p;
            ppoly_trim(pw);
        }
        PPoly g = ppoly_gcd(f, pw, p);
        int dg = ppoly_deg(g);
        if (dg > 0 && dg < d) {
            PPoly h = f;
            // h = f / g exactly
            PPoly q;
            {
                PPoly num = f;
                q.assign(f.size() - g.size() + 1, 0);
                std::uint64_t inv_lead = invmod(g.back(), p);
                while (ppoly_deg(num) >= ppoly_deg(g)) {
                    std::uint64_t fct = mulmod(num.back(), inv_lead, p);
                    std::size_t off = num.size() - g.size();
                    q[off] = fct;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        num[off + i] = (num[off + i] + p - mulmod(fct, g[i], p)) % p;
                    ppoly_trim(num);
                    if (num.empty()) break;
                }
                ppoly_trim(q);
            }
            h = q;
            ppoly_linear_roots(g, p, rng, out);
            ppoly_linear_roots(h, p, rng, out);
            return;
        }
    }
}

inline PPoly ppoly_newton_interpolate(const std::vector<std::uint64_t>& xs,
                                      const std::vector<std::uint64_t>& ys, std::uint64_t p) {
    std::size_t n = xs.size();
    std::vector<std::uint64_t> coef = ys;  // divided differences
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            std::uint64_t dx = (xs[i] + p - xs[i - j]) % p;
            coef[i] = mulmod((coef[i] + p - coef[i - 1]) % p, invmod(dx, p), p);
            if (i == j) break;
        }
    PPoly acc{};      // result
    PPoly basis{1};   // prod (x - xs_i)
    for (std::size_t i = 0; i < n; ++i) {
        if (acc.size() < basis.size()) acc.resize(basis.size(), 0);
        for (std::size_t k = 0; k < basis.size(); ++k)
            acc[k] = (acc[k] + mulmod(coef[i], basis[k], p)) % p;
        PPoly nb(basis.size() + 1, 0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            nb[k + 1] = (nb[k + 1] + basis[k]) % p;
            nb[k] = (nb[k] + mulmod(basis[k], p - (xs[i] % p), p)) % p;
        }
        basis = std::move(nb);
    }
    ppoly_trim(acc);
    return acc;
}

/// Roots in F_p of arbitrary f (not necessarily squarefree).
inline std::vector<std::uint64_t> ppoly_roots(const PPoly& f_in, std::uint64_t p, SplitMix64& rng) {
    PPoly f = f_in;
    ppoly_trim(f);
    std::vector<std::uint64_t> out;
    if (ppoly_deg(f) < 1) return out;
    // linear-factor part: gcd(x^p - x, f)
    PPoly xp = ppoly_xpow_mod(p, f, p);
    // xp - x
    PPoly xpx = xp;
    if (xpx.size() < 2) xpx.resize(2, 0);
    xpx[1] = (xpx[1] + p - 1) % p;
    ppoly_trim(xpx);
    PPoly g = ppoly_gcd(f, xpx, p);
    // make squarefree
    PPoly gsq = ppoly_gcd(g, ppoly_derivative(g, p), p);
    if (ppoly_deg(gsq) > 0) {
        PPoly q(g.size() - gsq.size() + 1, 0);
        PPoly num = g;
        std::uint64_t inv_lead = invmod(gsq.back(), p);
        while (ppoly_deg(num) >= ppoly_deg(gsq)) {
            std::uint64_t fct = mulmod(num.back(), inv_lead, p);
            std::size_t off = num.size() - gsq.size();
            q[off] = fct;
            for (std::size_t i = 0; i < gsq.size(); ++i)
                num[off + i] = (num[off + i] + p - mulmod(fct, gsq[i], p)) % p;
            ppoly_trim(num);
            if (num.empty()) break;
        }
        ppoly_trim(q);
        g = q;
    }
    ppoly_linear_roots(g, p, rng, out);
    return out;
}

}  // namespace surfsym

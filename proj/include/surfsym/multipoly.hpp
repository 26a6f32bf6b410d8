/// Exact multivariate polynomials over Q with graded-lex term order.
///
/// Terms are kept as a vector sorted in descending graded-lex order with no
/// zero coefficients, so equality is structural.  All arithmetic is exact.
#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "surfsym/error.hpp"
#include "surfsym/monomial.hpp"
#include "surfsym/rational.hpp"

namespace surfsym {

struct Term {
    Monomial m;
    Rational c;
};

class MultiPoly {
  public:
    MultiPoly() = default;

    static MultiPoly zero() { return MultiPoly(); }

    static MultiPoly constant(const Rational& c) {
        MultiPoly p;
        if (c != 0) p.terms_.push_back({Monomial::one(), c});
        return p;
    }

    static MultiPoly one() { return constant(1); }

    static MultiPoly variable(Var v, unsigned e = 1) {
        MultiPoly p;
        if (e == 0) return one();
        p.terms_.push_back({Monomial::var(v, e), Rational(1)});
        return p;
    }

    static MultiPoly term(const Monomial& m, const Rational& c) {
        MultiPoly p;
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    static MultiPoly from_terms(std::vector<Term> terms) {
        MultiPoly p;
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        assert(is_constant());
        return terms_[0].c;
    }

    int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_[0].m.degree()); }

    int degree(Var v) const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.exp(v)));
        return terms_.empty() ? -1 : d;
    }

    bool uses(Var v) const {
        for (const auto& t : terms_)
            if (t.m.exp(v) > 0) return true;
        return false;
    }

    /// Bitmask of variables with positive degree.
    unsigned support() const {
        unsigned mask = 0;
        for (const auto& t : terms_)
            for (int i = 0; i < kNumVars; ++i)
                if (t.m.exp(i) > 0) mask |= 1u << i;
        return mask;
    }

    const Term& leading_term() const {
        assert(!terms_.empty());
        return terms_.front();
    }
    const Rational& leading_coeff() const { return leading_term().c; }
    const Monomial& leading_monomial() const { return leading_term().m; }

    // -- arithmetic ---------------------------------------------------------

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.is_constant()) return b * a.constant_value();
        if (b.is_constant()) return a * b.constant_value();
        std::unordered_map<std::uint64_t, Rational> acc;
        acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Monomial m = ta.m * tb.m;
                auto [it, fresh] = acc.try_emplace(m.key, 0);
                it->second += ta.c * tb.c;
            }
        return from_accumulator(acc);
    }

    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

    MultiPoly operator*(const Rational& c) const {
        if (c == 0) return zero();
        MultiPoly r(*this);
        for (auto& t : r.terms_) t.c *= c;
        return r;
    }

    friend MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

    MultiPoly operator/(const Rational& c) const {
        assert(c != 0);
        return *this * (Rational(1) / c);
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly base = *this, r = one();
        while (e > 0) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // -- calculus & evaluation ----------------------------------------------

    MultiPoly derivative(Var v) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            unsigned e = t.m.exp(v);
            if (e == 0) continue;
            Monomial m = t.m / Monomial::var(v, 1);
            out.push_back({m, t.c * static_cast<long>(e)});
        }
        return from_terms(std::move(out));
    }

    /// Substitute rational values for a subset of the variables.
    MultiPoly eval_partial(const std::array<std::optional<Rational>, kNumVars>& vals) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Rational c = t.c;
            std::array<unsigned, kNumVars> e{};
            for (int i = 0; i < kNumVars; ++i) {
                unsigned ei = t.m.exp(i);
                if (vals[i].has_value() && ei > 0) {
                    Rational pw = pow_rational(*vals[i], ei);
                    c *= pw;
                } else {
                    e[i] = ei;
                }
            }
            if (c != 0) out.push_back({Monomial::from_exponents(e), c});
        }
        return from_terms(std::move(out));
    }

    MultiPoly eval_var(Var v, const Rational& value) const {
        std::array<std::optional<Rational>, kNumVars> vals{};
        vals[var_index(v)] = value;
        return eval_partial(vals);
    }

    /// Full evaluation; every used variable must be assigned.
    Rational eval(const std::array<std::optional<Rational>, kNumVars>& vals) const {
        MultiPoly r = eval_partial(vals);
        assert(r.is_constant());
        return r.constant_value();
    }

    Rational eval2(const Rational& tv, const Rational& sv) const {
        std::array<std::optional<Rational>, kNumVars> vals{};
        vals[var_index(Var::t)] = tv;
        vals[var_index(Var::s)] = sv;
        return eval(vals);
    }

    Rational eval1(const Rational& tv) const {
        std::array<std::optional<Rational>, kNumVars> vals{};
        vals[var_index(Var::t)] = tv;
        return eval(vals);
    }

    /// Rename `from` to `to`; `to` must not occur.
    MultiPoly rename(Var from, Var to) const {
        assert(!uses(to) || from == to);
        if (from == to) return *this;
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            std::array<unsigned, kNumVars> e{};
            for (int i = 0; i < kNumVars; ++i) e[i] = t.m.exp(i);
            e[var_index(to)] = e[var_index(from)];
            e[var_index(from)] = 0;
            out.push_back({Monomial::from_exponents(e), t.c});
        }
        return from_terms(std::move(out));
    }

    /// Simultaneous rename t->u, s->v (the reparametrization copy).
    MultiPoly rename_ts_to_uv() const {
        assert(!uses(Var::u) && !uses(Var::v));
        return rename(Var::t, Var::u).rename(Var::s, Var::v);
    }

    /// Coefficients with respect to one variable; index = exponent.
    std::vector<MultiPoly> coefficients_in(Var v) const {
        int d = std::max(degree(v), 0);
        std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(d) + 1);
        for (const auto& t : terms_) {
            unsigned e = t.m.exp(v);
            buckets[e].push_back({t.m / Monomial::var(v, e), t.c});
        }
        std::vector<MultiPoly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
        return out;
    }

    static MultiPoly from_coefficients(Var v, const std::vector<MultiPoly>& coeffs) {
        MultiPoly r;
        std::vector<Term> out;
        for (std::size_t e = 0; e < coeffs.size(); ++e) {
            Monomial mv = Monomial::var(v, static_cast<unsigned>(e));
            for (const auto& t : coeffs[e].terms()) out.push_back({t.m * mv, t.c});
        }
        return from_terms(std::move(out));
    }

    /// Horner evaluation in one variable with polynomial value.
    MultiPoly subst_poly(Var v, const MultiPoly& value) const {
        if (!uses(v)) return *this;
        auto cs = coefficients_in(v);
        MultiPoly acc = cs.back();
        for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * value + cs[k];
        return acc;
    }

    // -- content and primitive part -----------------------------------------

    /// p = content() * primitive_part(); the primitive part has integer
    /// coefficients with gcd 1 and positive leading coefficient.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer num_gcd = 0, den_lcm = 1;
        for (const auto& t : terms_) {
            num_gcd = gcd(num_gcd, t.c.get_num());
            den_lcm = lcm(den_lcm, t.c.get_den());
        }
        Rational c = make_rational(num_gcd, den_lcm);
        if (leading_coeff() < 0) c = -c;
        return c;
    }

    MultiPoly primitive_part() const {
        if (is_zero()) return zero();
        return *this / content();
    }

    // -- exact division ------------------------------------------------------

    /// Quotient if `d` divides exactly; nullopt otherwise.
    std::optional<MultiPoly> divide_exact(const MultiPoly& d) const {
        assert(!d.is_zero());
        if (is_zero()) return zero();
        if (d.is_constant()) return *this / d.constant_value();
        MultiPoly r = *this;
        std::vector<Term> q;
        const Term& dl = d.leading_term();
        while (!r.is_zero()) {
            const Term& rl = r.leading_term();
            if (!dl.m.divides(rl.m)) return std::nullopt;
            Term qt{rl.m / dl.m, rl.c / dl.c};
            q.push_back(qt);
            r = r - d * MultiPoly::term(qt.m, qt.c);
        }
        return from_terms(std::move(q));
    }

    bool divides(const MultiPoly& p) const { return p.divide_exact(*this).has_value(); }

    // -- printing -------------------------------------------------------------

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.c;
            if (first) {
                if (c < 0) {
                    out += "-";
                    c = -c;
                }
            } else {
                out += (c < 0) ? " - " : " + ";
                if (c < 0) c = -c;
            }
            first = false;
            if (t.m.is_one()) {
                out += c.get_str();
            } else {
                if (c != 1) out += c.get_str() + "*";
                out += t.m.str();
            }
        }
        return out;
    }

    /// Total order compatible with structural equality; used for canonical
    /// sorting of candidate lists.
    bool less_than(const MultiPoly& o) const {
        std::size_t n = std::min(terms_.size(), o.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (terms_[i].m != o.terms_[i].m) return o.terms_[i].m < terms_[i].m;
            int c = cmp(terms_[i].c, o.terms_[i].c);
            if (c != 0) return c < 0;
        }
        return terms_.size() < o.terms_.size();
    }

    static Rational pow_rational(const Rational& q, unsigned e) {
        Rational r(1), base = q;
        while (e > 0) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

  private:
    std::vector<Term> terms_;

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return b.m < a.m; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) {
                out.back().c += t.c;
                if (out.back().c == 0) out.pop_back();
            } else if (t.c != 0) {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        std::vector<Term> out;
        out.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const Term& ta = a.terms_[i];
            const Term& tb = b.terms_[j];
            if (tb.m < ta.m) {
                out.push_back(ta);
                ++i;
            } else if (ta.m < tb.m) {
                out.push_back({tb.m, subtract ? -tb.c : tb.c});
                ++j;
            } else {
                Rational c = subtract ? Rational(ta.c - tb.c) : Rational(ta.c + tb.c);
                if (c != 0) out.push_back({ta.m, std::move(c)});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) out.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j)
            out.push_back({b.terms_[j].m, subtract ? -b.terms_[j].c : b.terms_[j].c});
        MultiPoly r;
        r.terms_ = std::move(out);
        return r;
    }

    static MultiPoly from_accumulator(std::unordered_map<std::uint64_t, Rational>& acc) {
        std::vector<Term> out;
        out.reserve(acc.size());
        for (auto& [key, c] : acc) {
            if (c == 0) continue;
            Monomial m;
            m.key = key;
            out.push_back({m, std::move(c)});
        }
        std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return b.m < a.m; });
        MultiPoly r;
        r.terms_ = std::move(out);
        return r;
    }
};

}  // namespace surfsym
